#include <doctest.h>

#include "wgs/norms.hpp"
#include "wgs/szego.hpp"

#include <random>

using namespace wgs;

namespace {

// dense triple loop for Pi_+(|v|^2 v), independent of the FFT path
std::vector<cplx> dense_cubic(const std::vector<cplx>& a, int out_pmax) {
    int pm = static_cast<int>(a.size()) - 1;
    std::vector<cplx> out(out_pmax + 1, cplx{0.0, 0.0});
    for (int q = 0; q <= pm; ++q)
        for (int r = 0; r <= pm; ++r)
            for (int s = 0; s <= pm; ++s) {
                int p = q - r + s;
                if (p >= 0 && p <= out_pmax) out[p] += a[q] * std::conj(a[r]) * a[s];
            }
    return out;
}

SzegoState random_state(int p_max, unsigned seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    SzegoState v(p_max);
    for (cplx& z : v.a) z = scale * cplx{g(rng), g(rng)};
    return v;
}

} // namespace

TEST_CASE("szego right-hand side") {
    SzegoState v(5);
    cplx a{0.8, -0.3};
    v.a[1] = a;
    SzegoState r = szego_rhs(v);
    CHECK(std::abs(r.a[1] - std::norm(a) * a) < 1e-14);
    for (int p = 0; p <= 5; ++p)
        if (p != 1) CHECK(std::abs(r.a[p]) < 1e-15);

    // v = 1 + e^{iy}: |v|^2 v = 3 + 3 e^{iy} + e^{2iy} + e^{-iy}
    SzegoState w(5);
    w.a[0] = 1.0;
    w.a[1] = 1.0;
    SzegoState rw = szego_rhs(w);
    CHECK(std::abs(rw.a[0] - 3.0) < 1e-13);
    CHECK(std::abs(rw.a[1] - 3.0) < 1e-13);
    CHECK(std::abs(rw.a[2] - 1.0) < 1e-13);
    CHECK(std::abs(rw.a[3]) < 1e-13);

    SzegoState x = random_state(12, 3);
    auto dense = dense_cubic(x.a, 12);
    SzegoState fast = szego_rhs(x);
    for (int p = 0; p <= 12; ++p) CHECK(std::abs(fast.a[p] - dense[p]) < 1e-12);

    // mass-conservation generator: <rhs(v), v> is real
    cplx inner{0.0, 0.0};
    for (int p = 0; p <= 12; ++p) inner += fast.a[p] * std::conj(x.a[p]);
    CHECK(std::abs(inner.imag()) < 1e-13 * std::abs(inner));
}

TEST_CASE("hankel and toeplitz operators") {
    SzegoState v(4);
    v.a[1] = 1.0;
    SzegoState h0(4);
    h0.a[0] = 1.0;
    SzegoState r = hankel_apply(v, h0);
    CHECK(std::abs(r.a[1] - 1.0) < 1e-15); // H_{e^{iy}} 1 = e^{iy}
    SzegoState h1(4);
    h1.a[1] = 1.0;
    r = hankel_apply(v, h1);
    CHECK(std::abs(r.a[0] - 1.0) < 1e-15); // H_{e^{iy}} e^{iy} = 1

    // T_{|v|^2} with v = e^{iy} is the identity
    TorusField b(4);
    b.at(0) = 1.0;
    SzegoState h = random_state(4, 9);
    SzegoState th = toeplitz_apply(b, h);
    for (int p = 0; p <= 4; ++p) CHECK(std::abs(th.a[p] - h.a[p]) < 1e-15);

    // matrix and convolution realizations agree
    const int P = 32;
    SzegoState vv = random_state(P - 1, 10);
    SzegoState hh = random_state(P - 1, 11);
    CMat G = hankel_matrix(vv, P);
    Eigen::VectorXcd hvec(P);
    for (int i = 0; i < P; ++i) hvec(i) = std::conj(hh.a[i]);
    Eigen::VectorXcd out = G * hvec;
    SzegoState conv = hankel_apply(vv, hh);
    for (int i = 0; i < P; ++i) CHECK(std::abs(out(i) - conv.a[i]) < 1e-12);

    TorusField bb(P - 1);
    std::mt19937_64 rng(12);
    std::normal_distribution<double> gg(0.0, 1.0);
    for (int k = -(P - 1); k <= P - 1; ++k) bb.at(k) = cplx{gg(rng), gg(rng)};
    CMat T = toeplitz_matrix(bb, P);
    Eigen::VectorXcd hv2(P);
    for (int i = 0; i < P; ++i) hv2(i) = hh.a[i];
    Eigen::VectorXcd out2 = T * hv2;
    SzegoState conv2 = toeplitz_apply(bb, hh);
    for (int i = 0; i < P; ++i) CHECK(std::abs(out2(i) - conv2.a[i]) < 1e-11);
}

TEST_CASE("hankel spectrum") {
    SzegoState v(3);
    v.a[1] = 1.0;
    auto sd = hankel_spectrum(v, 4);
    CHECK(sd.singular[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sd.singular[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sd.singular[2] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(sd.trace_norm == doctest::Approx(2.0).epsilon(1e-13));

    // eigenvalues of H^2 are squared singular values
    SzegoState w(10);
    w.a[1] = cplx{0.5, 0.2};
    w.a[3] = cplx{-0.3, 0.7};
    auto sw = hankel_spectrum(w, 11);
    for (std::size_t i = 0; i < sw.singular.size(); ++i)
        CHECK(std::abs(sw.h2_eigs[i] - sw.singular[i] * sw.singular[i]) < 1e-10);

    SzegoState z(5);
    CHECK(hankel_spectrum(z, 6).trace_norm == 0.0);
    CHECK_THROWS_AS(hankel_spectrum(w, 5), std::invalid_argument);
}

TEST_CASE("lax pair residual") {
    SzegoState v(1);
    v.a[1] = cplx{0.9, -0.4};
    CHECK(lax_residual(v, 8) < 1e-13);

    SzegoState z(3);
    CHECK(lax_residual(z, 12) == 0.0);

    SzegoState r = random_state(10, 77);
    double m = std::sqrt(r.mass());
    CHECK(lax_residual(r, 34) < 1e-10 * (1.0 + m * m * m));
    CHECK_THROWS_AS(lax_residual(r, 20), std::invalid_argument);
}

TEST_CASE("szego evolution: exact single mode and invariants") {
    double tol = 1e-10;
    SzegoState v0(4);
    cplx a{0.6, 0.3};
    v0.a[1] = a;
    auto traj = evolve_szego(v0, 10.0, tol, {10.0});
    cplx want = a * std::polar(1.0, -std::norm(a) * 10.0);
    CHECK(std::abs(traj.states.back().a[1] - want) < 10.0 * tol);

    SzegoState w0(16);
    w0.a[1] = 1.0;
    w0.a[0] = 0.1;
    auto wt = evolve_szego(w0, 100.0, tol);
    auto drift = szego_invariant_drift(wt);
    CHECK(drift.mass < 1e-9);
    CHECK(drift.hamiltonian < 1e-9);
    CHECK(drift.momentum < 1e-9);

    SzegoState s0(32);
    s0.a[1] = 0.2;
    s0.a[2] = 0.1;
    auto st = evolve_szego(s0, 20.0, 1e-10);
    CHECK(szego_invariant_drift(st).singular_values < 1e-6);
}

TEST_CASE("peller band") {
    // single modes: B1/trace stays in a fixed band
    Band singles;
    for (int p = 1; p <= 32; ++p) {
        SzegoState v(p);
        v.a[p] = 1.0;
        TorusField tf(p);
        tf.at(p) = 1.0;
        double b1 = torus_norm(tf, TorusWhich::B1);
        double tr = hankel_spectrum(v, p + 1).trace_norm;
        singles.add(b1 / tr);
    }
    CHECK(singles.ratio() < 4.0);

    Band b8 = peller_ratio(8, 100, 1);
    Band b16 = peller_ratio(16, 100, 2);
    CHECK(b8.lo > 0.0);
    CHECK(b8.hi / b16.hi < 2.0);
    CHECK(b16.hi / b8.hi < 2.0);
    CHECK_THROWS_AS(peller_ratio(8, 0, 1), std::invalid_argument);
}

TEST_CASE("cascade scan") {
    auto scan = cascade_scan({0.2, 0.1}, 0.75, 4.0 * M_PI, 1e-9, 192);
    REQUIRE(scan.rows.size() == 2);
    CHECK(scan.rows[1].sup_hs > scan.rows[0].sup_hs); // smaller eps grows further
    // near-peak states carry a long geometric tail ~ (1 - c eps^2)^p; health
    // means no pile-up at the band edge, not an empty tail
    CHECK(scan.rows[0].tail_fraction < 0.02);
    CHECK(scan.rows[1].tail_fraction < 0.02);
    CHECK(scan.fitted_exponent < 0.0);

    // eps = 0: pure mode, no growth
    auto flat = cascade_scan({0.0}, 0.75, 4.0 * M_PI, 1e-9, 16);
    SzegoState v0(16);
    v0.a[1] = 1.0;
    CHECK(flat.rows[0].sup_hs == doctest::Approx(v0.hs_norm(0.75)).epsilon(1e-8));

    // s = 1/2 null control: sup^2 bounded by conserved mass + momentum
    auto null = cascade_scan({0.2}, 0.5, 2.0 * M_PI, 1e-9, 128);
    SzegoState n0(128);
    n0.a[1] = 1.0;
    n0.a[0] = 0.2;
    double bound = n0.mass() + n0.momentum();
    CHECK(null.rows[0].sup_hs * null.rows[0].sup_hs <= bound * (1.0 + 1e-8));

    CHECK_THROWS_AS(cascade_scan({0.1}, 0.4), std::invalid_argument);
}
