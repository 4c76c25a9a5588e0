#include "wgs/resonance.hpp"

#include "wgs/simd.hpp"

#include <map>
#include <mutex>

namespace wgs {

std::vector<ModeTuple> enumerate_level_set(int omega, int p_max, bool odd_only) {
    if (p_max > 64) throw std::invalid_argument("enumerate_level_set: p_max > 64");
    std::vector<ModeTuple> out;
    for (int p0 = -p_max; p0 <= p_max; ++p0) {
        if (odd_only && p0 % 2 == 0) continue;
        for (int p1 = -p_max; p1 <= p_max; ++p1) {
            if (odd_only && p1 % 2 == 0) continue;
            for (int p2 = -p_max; p2 <= p_max; ++p2) {
                if (odd_only && p2 % 2 == 0) continue;
                int p3 = p0 - p1 + p2; // momentum constraint
                if (std::abs(p3) > p_max) continue;
                if (odd_only && p3 % 2 == 0) continue;
                ModeTuple t{p0, p1, p2, p3};
                if (t.level() == omega) out.push_back(t);
            }
        }
    }
    return out;
}

ResonanceClass classify_tuple(const ModeTuple& t) {
    if (t.momentum() != 0) throw std::invalid_argument("classify_tuple: tuple not in M");
    ResonanceClass c;
    c.all_nonneg = t.p0 >= 0 && t.p1 >= 0 && t.p2 >= 0 && t.p3 >= 0;
    c.all_nonpos = t.p0 <= 0 && t.p1 <= 0 && t.p2 <= 0 && t.p3 <= 0;
    c.pair_0123 = t.p0 == t.p1 && t.p2 == t.p3;
    c.pair_0321 = t.p0 == t.p3 && t.p2 == t.p1;
    return c;
}

const std::vector<std::array<int, 4>>& resonant_tuples(int p_max, RVariant v) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::vector<std::array<int, 4>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p_max, static_cast<int>(v));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<std::array<int, 4>> tuples;
    for (int q = -p_max; q <= p_max; ++q)
        for (int r = -p_max; r <= p_max; ++r)
            for (int s = -p_max; s <= p_max; ++s) {
                int p = q - r + s;
                if (std::abs(p) > p_max) continue;
                ModeTuple t{p, q, r, s};
                switch (v) {
                case RVariant::full:
                    if (t.level() != 0) continue;
                    break;
                case RVariant::plus:
                    if (!(p > 0 && q > 0 && r > 0 && s > 0)) continue;
                    break;
                case RVariant::minus:
                    if (!(p < 0 && q < 0 && r < 0 && s < 0)) continue;
                    break;
                }
                tuples.push_back({p, q, r, s});
            }
    return cache.emplace(key, std::move(tuples)).first->second;
}

CylinderField resonant_trilinear(const CylinderField& F, const CylinderField& G,
                                 const CylinderField& H, RVariant variant) {
    if (F.rep() != Rep::fourier_xy || G.rep() != Rep::fourier_xy || H.rep() != Rep::fourier_xy)
        throw std::invalid_argument("resonant_trilinear: needs fourier_xy");
    if (F.grid_ptr() != G.grid_ptr() || F.grid_ptr() != H.grid_ptr()) {
        const auto &a = F.grid(), &b = G.grid(), &c = H.grid();
        bool same = a.L == b.L && a.n_x == b.n_x && a.p_max == b.p_max && a.L == c.L &&
                    a.n_x == c.n_x && a.p_max == c.p_max;
        if (!same) throw std::invalid_argument("resonant_trilinear: grid mismatch");
    }
    const auto& g = F.grid();
    CylinderField out(F.grid_ptr(), Rep::fourier_xy);
    for (const auto& t : resonant_tuples(g.p_max, variant))
        simd::cmul3_acc(out.mode(t[0]), F.mode(t[1]), G.mode(t[2]), H.mode(t[3]), g.n_x);
    return out;
}

double max_slice_l2(const CylinderField& G) {
    const auto& g = G.grid();
    double best = 0.0;
    for (int k = 0; k < g.n_x; ++k) {
        double acc = 0.0;
        for (int p = -g.p_max; p <= g.p_max; ++p) acc += std::norm(G.mode(p)[k]);
        best = std::max(best, acc);
    }
    return std::sqrt(best);
}

double decoupling_residual(const CylinderField& G) {
    if (G.rep() != Rep::fourier_xy) throw std::invalid_argument("decoupling_residual: needs fourier_xy");
    const auto& g = G.grid();
    double total = simd::sumsq(G.data().data(), G.data().size());
    double even = 0.0;
    for (int p = -g.p_max; p <= g.p_max; ++p)
        if (p % 2 == 0) even += simd::sumsq(G.mode(p), g.n_x);
    if (total > 0.0 && std::sqrt(even / total) > 1e-14)
        throw std::invalid_argument("decoupling_residual: even-mode content above tolerance");

    CylinderField Gp = project(G, Proj::pi_plus, 0.0, /*strict*/ true);
    CylinderField Gm = project(G, Proj::pi_minus, 0.0, /*strict*/ true);
    CylinderField full = resonant_trilinear(G, G, G, RVariant::full);
    CylinderField rp = resonant_trilinear(Gp, Gp, Gp, RVariant::plus);
    CylinderField rm = resonant_trilinear(Gm, Gm, Gm, RVariant::minus);

    double worst = 0.0;
    for (int k = 0; k < g.n_x; ++k) {
        double mp = 0.0, mm = 0.0;
        for (int p = 1; p <= g.p_max; ++p) mp += std::norm(G.mode(p)[k]);
        for (int p = -g.p_max; p < 0; ++p) mm += std::norm(G.mode(p)[k]);
        double acc = 0.0;
        for (int p = -g.p_max; p <= g.p_max; ++p) {
            cplx pred = rp.mode(p)[k] + rm.mode(p)[k];
            if (p > 0) pred += 2.0 * mm * G.mode(p)[k];
            if (p < 0) pred += 2.0 * mp * G.mode(p)[k];
            acc += std::norm(full.mode(p)[k] - pred);
        }
        worst = std::max(worst, acc);
    }
    return std::sqrt(worst);
}

} // namespace wgs
