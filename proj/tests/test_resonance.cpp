#include <doctest.h>

#include "wgs/resonance.hpp"

#include <algorithm>
#include <random>

using namespace wgs;

TEST_CASE("level set enumeration") {
    auto g0 = enumerate_level_set(0, 3, false);
    auto has = [&](int a, int b, int c, int d) {
        return std::find(g0.begin(), g0.end(), ModeTuple{a, b, c, d}) != g0.end();
    };
    CHECK(has(1, 1, 3, 3));
    CHECK(has(3, 1, 1, 3));

    ModeTuple t{3, 1, -1, 1};
    CHECK(t.momentum() == 0);
    CHECK(t.level() == 2);
    CHECK(!has(3, 1, -1, 1));
    auto g2 = enumerate_level_set(2, 3, false);
    CHECK(std::find(g2.begin(), g2.end(), t) != g2.end());

    // odd-only at p_max=1 against exhaustive brute force over {-1,1}^4
    auto odd = enumerate_level_set(0, 1, true);
    std::vector<ModeTuple> brute;
    for (int a : {-1, 1})
        for (int b : {-1, 1})
            for (int c : {-1, 1})
                for (int d : {-1, 1}) {
                    ModeTuple u{a, b, c, d};
                    if (u.momentum() == 0 && u.level() == 0) brute.push_back(u);
                }
    std::sort(brute.begin(), brute.end());
    CHECK(odd.size() == brute.size());
    for (std::size_t i = 0; i < brute.size(); ++i) CHECK(odd[i] == brute[i]);

    CHECK_THROWS_AS(enumerate_level_set(0, 100, false), std::invalid_argument);
}

TEST_CASE("classification matches the four-case lemma") {
    auto c = classify_tuple({2, 1, 1, 2});
    CHECK(c.pair_0321);
    CHECK(c.all_nonneg);
    CHECK(c.any());

    auto c2 = classify_tuple({-1, -3, -5, -3});
    CHECK(c2.all_nonpos);
    CHECK(ModeTuple{-1, -3, -5, -3}.level() == 0);

    CHECK_THROWS_AS(classify_tuple({1, 0, 0, 0}), std::invalid_argument);

    // exhaustive equivalence on a quick band (the acceptance suite goes to 30)
    const int P = 12;
    for (int a = -P; a <= P; ++a)
        for (int b = -P; b <= P; ++b)
            for (int c3 = -P; c3 <= P; ++c3) {
                int d = a - b + c3;
                if (std::abs(d) > P) continue;
                ModeTuple u{a, b, c3, d};
                REQUIRE((u.level() == 0) == classify_tuple(u).any());
            }
}

namespace {

// dense Gamma_0 sum, independent of the tuple-table implementation
CylinderField dense_resonant(const CylinderField& F, const CylinderField& G,
                             const CylinderField& H) {
    const auto& g = F.grid();
    CylinderField out(F.grid_ptr(), Rep::fourier_xy);
    for (int k = 0; k < g.n_x; ++k)
        for (int q = -g.p_max; q <= g.p_max; ++q)
            for (int r = -g.p_max; r <= g.p_max; ++r)
                for (int s = -g.p_max; s <= g.p_max; ++s) {
                    int p = q - r + s;
                    if (std::abs(p) > g.p_max) continue;
                    if (std::abs(p) - std::abs(q) + std::abs(r) - std::abs(s) != 0) continue;
                    out.mode(p)[k] += F.mode(q)[k] * std::conj(G.mode(r)[k]) * H.mode(s)[k];
                }
    return out;
}

} // namespace

TEST_CASE("resonant trilinear operator") {
    auto g = build_grid(32.0 * M_PI, 16, 8);

    // single mode: only the diagonal tuple survives
    cplx a{0.7, 0.4};
    CylinderField G(g, Rep::fourier_xy);
    for (int k = 4; k < 8; ++k) G.mode(1)[k] = a;
    CylinderField R = resonant_trilinear(G, G, G, RVariant::full);
    for (int k = 0; k < g->n_x; ++k) {
        cplx want = (k >= 4 && k < 8) ? std::norm(a) * a : cplx{0.0, 0.0};
        CHECK(std::abs(R.mode(1)[k] - want) < 1e-14);
        for (int p = -8; p <= 8; ++p)
            if (p != 1) CHECK(std::abs(R.mode(p)[k]) == 0.0);
    }

    CylinderField F = random_field(g, 11, 0.5 * g->xi_max(), 8);
    CylinderField Gg = random_field(g, 12, 0.5 * g->xi_max(), 8);
    CylinderField H = random_field(g, 13, 0.5 * g->xi_max(), 8);
    CylinderField fast = resonant_trilinear(F, Gg, H, RVariant::full);
    CylinderField dense = dense_resonant(F, Gg, H);
    double scale = sup_abs(dense);
    for (std::size_t i = 0; i < fast.data().size(); ++i)
        CHECK(std::abs(fast.data()[i] - dense.data()[i]) <= 1e-13 * scale);

    // (F,H) exchange symmetry
    CylinderField sw = resonant_trilinear(H, Gg, F, RVariant::full);
    for (std::size_t i = 0; i < fast.data().size(); ++i)
        CHECK(std::abs(fast.data()[i] - sw.data()[i]) <= 1e-13 * scale);

    // odd-mode inputs give odd-mode output
    CylinderField O = random_field(g, 14, 0.5 * g->xi_max(), 7, /*odd*/ true);
    CylinderField RO = resonant_trilinear(O, O, O, RVariant::full);
    CHECK(even_mode_fraction(RO) < 1e-28);

    // the cancellation <i R[F,F,F], F> is real-zero
    CylinderField RF = resonant_trilinear(F, F, F, RVariant::full);
    cplx inner{0.0, 0.0};
    for (std::size_t i = 0; i < RF.data().size(); ++i)
        inner += RF.data()[i] * std::conj(F.data()[i]);
    CHECK(std::abs(inner.imag()) < 1e-12 * std::abs(inner));
}

TEST_CASE("odd-mode decoupling residual") {
    auto g = build_grid(32.0 * M_PI, 16, 9);

    // modes +-1 only
    CylinderField G(g, Rep::fourier_xy);
    for (int k = 0; k < g->n_x; ++k) {
        G.mode(1)[k] = cplx{0.4, 0.1};
        G.mode(-1)[k] = cplx{-0.2, 0.3};
    }
    CHECK(decoupling_residual(G) < 1e-13);

    // plus-sector data only: residual reduces to |R_full - R_+| = 0
    CylinderField Gp = random_field(g, 21, 0.5 * g->xi_max(), 9, /*odd*/ true);
    Gp = project(Gp, Proj::pi_plus, 0.0, true);
    CHECK(decoupling_residual(Gp) < 1e-12 * std::pow(max_slice_l2(Gp), 3.0));

    CylinderField Gr = random_field(g, 22, 0.5 * g->xi_max(), 9, /*odd*/ true);
    double bound = 1e-12 * std::pow(max_slice_l2(Gr), 3.0);
    CHECK(decoupling_residual(Gr) < bound);

    CylinderField bad = Gr;
    bad.mode(2)[3] = 1e-6;
    CHECK_THROWS_AS(decoupling_residual(bad), std::invalid_argument);
}
