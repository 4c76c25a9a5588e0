#include <doctest.h>

#include "wgs/bump.hpp"
#include "wgs/field.hpp"
#include "wgs/norms.hpp"

using namespace wgs;

TEST_CASE("torus norms: single modes and zero") {
    TorusField v(7);
    v.at(3) = 1.0;
    double s = 0.7;
    CHECK(torus_norm(v, TorusWhich::hs_p, s) == doctest::Approx(std::pow(10.0, s / 2)).epsilon(1e-13));
    CHECK(torus_norm(v, TorusWhich::L2) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(torus_norm(v, TorusWhich::L1) == doctest::Approx(1.0).epsilon(1e-12));

    // B1 of e^{iy}: only the N=1 block is active and its multiplier is 1
    TorusField e1(7);
    e1.at(1) = 1.0;
    CHECK(torus_norm(e1, TorusWhich::B1) == doctest::Approx(1.0).epsilon(1e-12));

    // B1 of e^{3iy} against the direct multiplier sum (regression for phibar)
    TorusField e3(7);
    e3.at(3) = 1.0;
    double want = 0.0;
    for (double N : dyadic_blocks(7)) want += N * delta_multiplier(3.0, N);
    CHECK(torus_norm(e3, TorusWhich::B1) == doctest::Approx(want).epsilon(1e-12));

    TorusField z(7);
    for (auto which : {TorusWhich::hs_p, TorusWhich::B1, TorusWhich::L1, TorusWhich::L2})
        CHECK(torus_norm(z, which, 1.0) == 0.0);
}

TEST_CASE("cylinder norms: direct-evaluation oracle and structure") {
    auto g = build_grid(64.0 * M_PI, 256, 4);
    auto prof = [](double xi) { return std::exp(-xi * xi); };
    CylinderField F = make_separable(g, {{1, cplx{1.0, 0.0}}}, prof);

    NormParams np;
    np.s = 0.75;
    // Y^s oracle: sup_xi (1+xi^2) (1+p^2)^{s/2} |profile|
    double want = 0.0;
    for (int k = 0; k < g->n_x; ++k) {
        double xi = g->xi(k);
        want = std::max(want, (1.0 + xi * xi) * std::pow(2.0, np.s / 2) * prof(xi));
    }
    CHECK(cylinder_norm(F, CylWhich::Ys, np) == doctest::Approx(want).epsilon(1e-12));

    // Z oracle for a single-mode separable field: sup (1+xi^2)|g| * B1(e^{iy})
    double zwant = 0.0;
    for (int k = 0; k < g->n_x; ++k) {
        double xi = g->xi(k);
        zwant = std::max(zwant, (1.0 + xi * xi) * prof(xi));
    }
    CHECK(cylinder_norm(F, CylWhich::Z, np) == doctest::Approx(zwant).epsilon(1e-10));

    CylinderField zero(g, Rep::fourier_xy);
    for (auto which : {CylWhich::Ys, CylWhich::Z, CylWhich::S, CylWhich::S_plus,
                       CylWhich::L2xHs_y, CylWhich::Hs, CylWhich::L2})
        CHECK(cylinder_norm(zero, which, np) == 0.0);

    // homogeneity and monotonicity
    CylinderField R = random_field(g, 17, 0.5 * g->xi_max(), 4);
    CylinderField R2 = R;
    for (cplx& z : R2.data()) z *= 2.0;
    for (auto which : {CylWhich::Ys, CylWhich::Z, CylWhich::S, CylWhich::S_plus, CylWhich::Hs}) {
        double a = cylinder_norm(R, which, np), b = cylinder_norm(R2, which, np);
        CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-10));
    }
    NormParams lo = np, hi = np;
    lo.s = 0.5;
    hi.s = 1.5;
    CHECK(cylinder_norm(R, CylWhich::Hs, lo) <= cylinder_norm(R, CylWhich::Hs, hi));
    CHECK(cylinder_norm(R, CylWhich::S, np) <= cylinder_norm(R, CylWhich::S_plus, np));
}

TEST_CASE("X_T aggregate over a trajectory") {
    auto g = build_grid(64.0 * M_PI, 128, 3);
    CylinderField F = make_separable(g, {{1, cplx{1.0, 0.0}}},
                                     [](double xi) { return std::exp(-xi * xi); });
    NormParams np;
    double delta = 1e-3;
    CylinderTrajectory traj;
    traj.times = {0.9, 1.0};
    traj.states = {F, F};
    double z = cylinder_norm(F, CylWhich::Z, np);
    double s = cylinder_norm(F, CylWhich::S, np);
    double want = std::max(z, std::pow(1.9, -delta) * s); // dF/dt = 0 for a frozen pair
    CHECK(xt_norm(traj, 1.0, delta, false, np) == doctest::Approx(want).epsilon(1e-12));

    CylinderTrajectory traj2 = traj;
    for (auto& st : traj2.states)
        for (cplx& zz : st.data()) zz *= 2.0;
    CHECK(xt_norm(traj2, 1.0, delta, false, np) ==
          doctest::Approx(2.0 * xt_norm(traj, 1.0, delta, false, np)).epsilon(1e-12));

    CylinderTrajectory one;
    one.times = {1.0};
    one.states = {F};
    CHECK_THROWS_AS(xt_norm(one, 1.0, delta, false, np), std::invalid_argument);
}

TEST_CASE("hierarchy: single torus modes and audit sanity") {
    auto g = build_grid(64.0 * M_PI, 128, 8);
    auto prof = [](double xi) { return std::exp(-xi * xi); };
    NormParams half;
    half.s = 0.5;
    double prev = 1e300;
    for (int p : {1, 2, 4, 8}) {
        CylinderField F = make_separable(g, {{p, cplx{1.0, 0.0}}}, prof);
        double ratio = cylinder_norm(F, CylWhich::Ys, half) / cylinder_norm(F, CylWhich::Z);
        CHECK(ratio < prev * (1.0 + 1e-12)); // bounded, non-increasing in p
        prev = ratio;
    }

    auto rep = hierarchy_audit(g, 25, 7);
    CHECK(rep.y_half_over_z > 0.0);
    CHECK(rep.z_over_y_s > 0.0);
    CHECK(rep.h_half_over_z > 0.0);
    CHECK(rep.z_over_s > 0.0);
    CHECK(rep.z_over_interp > 0.0);
    CHECK_THROWS_AS(hierarchy_audit(g, 0, 7), std::invalid_argument);
}

TEST_CASE("B1 dominates H^{1/2} on the torus as a ratio band") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        TorusField v(12);
        for (cplx& z : v.c) z = cplx{gauss(rng), gauss(rng)};
        double h_half = torus_norm(v, TorusWhich::hs_p, 0.5);
        double b1 = torus_norm(v, TorusWhich::B1);
        worst = std::max(worst, h_half / b1);
    }
    CHECK(worst < 3.0);
    CHECK(worst > 0.0);
}
