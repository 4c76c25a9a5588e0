#include "wgs/field.hpp"

#include "wgs/bump.hpp"
#include "wgs/fft.hpp"
#include "wgs/simd.hpp"

#include <algorithm>
#include <random>

namespace wgs {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2(int n) {
    int m = 1;
    while (m < n) m <<= 1;
    return m;
}

} // namespace

GridPtr build_grid(double L, int n_x, int p_max, int n_y) {
    if (L <= 0.0) throw std::invalid_argument("build_grid: L must be positive");
    if (!is_pow2(n_x)) throw std::invalid_argument("build_grid: n_x must be a power of two");
    if (p_max < 1) throw std::invalid_argument("build_grid: p_max must be >= 1");
    if (n_y == 0) n_y = next_pow2(4 * p_max + 2);
    if (n_y < 4 * p_max + 2)
        throw std::invalid_argument("build_grid: n_y < 4*p_max+2 (no headroom for cubic products)");
    auto g = std::make_shared<CylinderGrid>();
    g->L = L;
    g->n_x = n_x;
    g->p_max = p_max;
    g->n_y = n_y;
    return g;
}

std::vector<cplx> TorusField::values(int n) const {
    if (n < 2 * p_max + 1) throw std::invalid_argument("TorusField::values: grid too coarse");
    std::vector<cplx> buf(n, cplx{0.0, 0.0});
    for (int p = -p_max; p <= p_max; ++p) {
        int idx = p >= 0 ? p : p + n;
        buf[idx] = at(p);
    }
    fft::dft(buf.data(), n, fft::backward);
    return buf;
}

TorusField TorusField::from_values(std::span<const cplx> vals, int p_max) {
    int n = static_cast<int>(vals.size());
    std::vector<cplx> buf(vals.begin(), vals.end());
    fft::dft(buf.data(), n, fft::forward);
    TorusField out(p_max);
    for (int p = -p_max; p <= p_max; ++p) {
        int idx = p >= 0 ? p : p + n;
        out.at(p) = buf[idx] / static_cast<double>(n);
    }
    return out;
}

CylinderField::CylinderField(GridPtr g, Rep r) : grid_(std::move(g)), rep_(r) {
    data_.assign(static_cast<std::size_t>(rows()) * grid_->n_x, cplx{0.0, 0.0});
}

TorusField CylinderField::slice(int k) const {
    if (rep_ != Rep::fourier_xy) throw std::invalid_argument("slice: needs fourier_xy");
    TorusField out(grid_->p_max);
    for (int p = -grid_->p_max; p <= grid_->p_max; ++p) out.at(p) = mode(p)[k];
    return out;
}

namespace {

// physical <-> fourier_x on all rows. Forward maps u(x_j) to the density
// A(xi_k) = (dx/2pi)(-1)^k DFT_k; the (-1)^k carries the -L/2 grid offset.
void x_forward_rows(CylinderField& f) {
    const auto& g = f.grid();
    const int n = g.n_x, rows = g.n_y;
    fft::dft_many(f.data().data(), n, rows, 1, n, fft::forward);
    const double scale = g.dx() / (2.0 * M_PI);
    for (int r = 0; r < rows; ++r) {
        cplx* row = f.row(r);
        for (int k = 0; k < n; ++k) row[k] *= (k & 1) ? -scale : scale;
    }
}

void x_backward_rows(CylinderField& f) {
    const auto& g = f.grid();
    const int n = g.n_x, rows = g.n_y;
    const double scale = g.dxi();
    for (int r = 0; r < rows; ++r) {
        cplx* row = f.row(r);
        for (int k = 0; k < n; ++k) row[k] *= (k & 1) ? -scale : scale;
    }
    fft::dft_many(f.data().data(), n, rows, 1, n, fft::backward);
}

CylinderField y_forward(const CylinderField& fx) {
    const auto& g = fx.grid();
    CylinderField out(fx.grid_ptr(), Rep::fourier_xy);
    // column DFTs over the y rows, strided
    std::vector<cplx> buf = fx.data();
    fft::dft_many(buf.data(), g.n_y, g.n_x, g.n_x, 1, fft::forward);
    const double inv = 1.0 / g.n_y;
    for (int p = -g.p_max; p <= g.p_max; ++p) {
        int src = p >= 0 ? p : p + g.n_y;
        const cplx* brow = buf.data() + static_cast<std::size_t>(src) * g.n_x;
        cplx* orow = out.mode(p);
        for (int k = 0; k < g.n_x; ++k) orow[k] = brow[k] * inv;
    }
    return out;
}

CylinderField y_backward(const CylinderField& fxy) {
    const auto& g = fxy.grid();
    CylinderField out(fxy.grid_ptr(), Rep::fourier_x);
    for (int p = -g.p_max; p <= g.p_max; ++p) {
        int dst = p >= 0 ? p : p + g.n_y;
        std::copy_n(fxy.mode(p), g.n_x, out.row(dst));
    }
    fft::dft_many(out.data().data(), g.n_y, g.n_x, g.n_x, 1, fft::backward);
    return out;
}

} // namespace

CylinderField transform(const CylinderField& f, Rep target) {
    if (f.rep() == target) return f;
    switch (f.rep()) {
    case Rep::physical: {
        CylinderField out(f.grid_ptr(), Rep::fourier_x);
        out.data() = f.data();
        x_forward_rows(out);
        if (target == Rep::fourier_x) return out;
        return y_forward(out);
    }
    case Rep::fourier_x: {
        if (target == Rep::fourier_xy) return y_forward(f);
        CylinderField out(f.grid_ptr(), Rep::physical);
        out.data() = f.data();
        x_backward_rows(out);
        return out;
    }
    case Rep::fourier_xy: {
        CylinderField fx = y_backward(f);
        if (target == Rep::fourier_x) return fx;
        CylinderField out(f.grid_ptr(), Rep::physical);
        out.data() = std::move(fx.data());
        x_backward_rows(out);
        return out;
    }
    }
    throw std::logic_error("transform: bad representation");
}

CylinderField free_evolve(const CylinderField& f, double t) {
    if (f.rep() != Rep::fourier_xy) throw std::invalid_argument("free_evolve: needs fourier_xy");
    const auto& g = f.grid();
    CylinderField out = f;
    std::vector<cplx> xi_phase(g.n_x);
    for (int k = 0; k < g.n_x; ++k) {
        double xi = g.xi(k);
        xi_phase[k] = std::polar(1.0, -t * xi * xi);
    }
    for (int p = -g.p_max; p <= g.p_max; ++p) {
        cplx pp = std::polar(1.0, -t * std::abs(static_cast<double>(p)));
        cplx* row = out.mode(p);
        simd::cmul(row, xi_phase.data(), g.n_x);
        for (int k = 0; k < g.n_x; ++k) row[k] *= pp;
    }
    return out;
}

double s0_multiplier(double p) { return phibar(2.0 * p); }
double delta_multiplier(double p, double N) { return lp_shell(p / N); }

std::vector<double> dyadic_blocks(int p_max) {
    std::vector<double> Ns;
    for (double N = 1.0; N <= 2.0 * p_max; N *= 2.0) Ns.push_back(N);
    if (Ns.empty()) Ns.push_back(1.0);
    return Ns;
}

CylinderField project(const CylinderField& f, Proj kind, double N, bool strict_plus) {
    const auto& g = f.grid();
    auto need_xy = [&] {
        if (f.rep() != Rep::fourier_xy) throw std::invalid_argument("project: needs fourier_xy");
    };
    auto check_dyadic = [&] {
        if (N < 1.0 || std::fabs(std::log2(N) - std::round(std::log2(N))) > 1e-12)
            throw std::invalid_argument("project: N must be a dyadic integer");
    };
    CylinderField out = f;
    switch (kind) {
    case Proj::pi_plus:
    case Proj::pi_minus: {
        need_xy();
        for (int p = -g.p_max; p <= g.p_max; ++p) {
            bool plus = strict_plus ? (p > 0) : (p >= 0);
            bool keep = (kind == Proj::pi_plus) ? plus : !plus;
            if (!keep) std::fill_n(out.mode(p), g.n_x, cplx{0.0, 0.0});
        }
        return out;
    }
    case Proj::q_shell: {
        check_dyadic();
        if (f.rep() == Rep::physical)
            return transform(project(transform(f, Rep::fourier_x), kind, N), Rep::physical);
        for (int r = 0; r < out.rows(); ++r) {
            cplx* row = out.row(r);
            for (int k = 0; k < g.n_x; ++k) row[k] *= lp_shell(g.xi(k) / N);
        }
        return out;
    }
    case Proj::p_shell: {
        need_xy();
        check_dyadic();
        for (int p = -g.p_max; p <= g.p_max; ++p) {
            cplx* row = out.mode(p);
            for (int k = 0; k < g.n_x; ++k) {
                double lo = phibar(2.0 * g.xi(k) / N) * phibar(2.0 * p / N);
                double hi = phibar(g.xi(k) / N) * phibar(static_cast<double>(p) / N);
                row[k] *= (hi - lo);
            }
        }
        return out;
    }
    case Proj::delta_shell: {
        need_xy();
        check_dyadic();
        for (int p = -g.p_max; p <= g.p_max; ++p) {
            double m = delta_multiplier(p, N);
            cplx* row = out.mode(p);
            for (int k = 0; k < g.n_x; ++k) row[k] *= m;
        }
        return out;
    }
    case Proj::s0: {
        need_xy();
        for (int p = -g.p_max; p <= g.p_max; ++p) {
            double m = s0_multiplier(p);
            cplx* row = out.mode(p);
            for (int k = 0; k < g.n_x; ++k) row[k] *= m;
        }
        return out;
    }
    }
    throw std::logic_error("project: bad kind");
}

double edge_mass_fraction(const CylinderField& f) {
    CylinderField ph = transform(f, Rep::physical);
    const auto& g = ph.grid();
    double total = 0.0, edge = 0.0;
    for (int m = 0; m < g.n_y; ++m) {
        const cplx* row = ph.row(m);
        for (int j = 0; j < g.n_x; ++j) {
            double a = std::norm(row[j]);
            total += a;
            if (std::fabs(g.x(j)) >= 0.9 * (0.5 * g.L)) edge += a;
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

CylinderField multiply_by_x(const CylinderField& f, double* edge_mass) {
    Rep orig = f.rep();
    CylinderField ph = transform(f, Rep::physical);
    const auto& g = ph.grid();
    double total = 0.0, edge = 0.0;
    for (int m = 0; m < g.n_y; ++m) {
        cplx* row = ph.row(m);
        for (int j = 0; j < g.n_x; ++j) {
            double a = std::norm(row[j]);
            total += a;
            if (std::fabs(g.x(j)) >= 0.9 * (0.5 * g.L)) edge += a;
            row[j] *= g.x(j);
        }
    }
    if (edge_mass) *edge_mass = total > 0.0 ? edge / total : 0.0;
    return transform(ph, orig);
}

double l2_norm(const CylinderField& f) {
    const auto& g = f.grid();
    double ss = simd::sumsq(f.data().data(), f.data().size());
    switch (f.rep()) {
    case Rep::physical: return std::sqrt(ss * g.dx() * (2.0 * M_PI / g.n_y));
    case Rep::fourier_x: return std::sqrt(ss * 4.0 * M_PI * M_PI * g.dxi() / g.n_y);
    case Rep::fourier_xy: return std::sqrt(ss * 4.0 * M_PI * M_PI * g.dxi());
    }
    return 0.0;
}

double sup_abs(const CylinderField& f) {
    double m = 0.0;
    for (const cplx& z : f.data()) m = std::max(m, std::abs(z));
    return m;
}

double even_mode_fraction(const CylinderField& f) {
    if (f.rep() != Rep::fourier_xy) return even_mode_fraction(transform(f, Rep::fourier_xy));
    const auto& g = f.grid();
    double even = 0.0, total = 0.0;
    for (int p = -g.p_max; p <= g.p_max; ++p) {
        double s = simd::sumsq(f.mode(p), g.n_x);
        total += s;
        if (p % 2 == 0) even += s;
    }
    return total > 0.0 ? even / total : 0.0;
}

std::vector<cplx> line_fourier(const CylinderGrid& g, std::span<const cplx> f) {
    if (static_cast<int>(f.size()) != g.n_x) throw std::invalid_argument("line_fourier: size");
    std::vector<cplx> out(f.begin(), f.end());
    fft::dft(out.data(), g.n_x, fft::forward);
    for (int k = 0; k < g.n_x; ++k) out[k] *= (k & 1) ? -g.dx() : g.dx();
    return out;
}

std::vector<cplx> line_inverse(const CylinderGrid& g, std::span<const cplx> fhat) {
    if (static_cast<int>(fhat.size()) != g.n_x) throw std::invalid_argument("line_inverse: size");
    std::vector<cplx> out(fhat.begin(), fhat.end());
    const double scale = g.dxi() / (2.0 * M_PI);
    for (int k = 0; k < g.n_x; ++k) out[k] *= (k & 1) ? -scale : scale;
    fft::dft(out.data(), g.n_x, fft::backward);
    return out;
}

CylinderField make_separable(GridPtr g, const std::vector<std::pair<int, cplx>>& modes,
                             const std::function<double(double)>& xi_profile) {
    CylinderField out(g, Rep::fourier_xy);
    std::vector<double> prof(g->n_x);
    for (int k = 0; k < g->n_x; ++k) prof[k] = xi_profile(g->xi(k));
    for (auto [p, amp] : modes) {
        if (std::abs(p) > g->p_max) throw std::invalid_argument("make_separable: |p| > p_max");
        cplx* row = out.mode(p);
        for (int k = 0; k < g->n_x; ++k) row[k] += amp * prof[k];
    }
    return out;
}

CylinderField random_field(GridPtr g, unsigned seed, double xi_band, int band_p, bool odd_only) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CylinderField out(g, Rep::fourier_xy);
    band_p = std::min(band_p, g->p_max);
    for (int p = -band_p; p <= band_p; ++p) {
        if (odd_only && p % 2 == 0) continue;
        cplx* row = out.mode(p);
        for (int k = 0; k < g->n_x; ++k) {
            double env = phibar(2.0 * g->xi(k) / xi_band);
            row[k] = env * cplx{gauss(rng), gauss(rng)};
        }
    }
    return out;
}

} // namespace wgs
