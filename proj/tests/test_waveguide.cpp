#include <doctest.h>

#include "wgs/norms.hpp"
#include "wgs/resonance.hpp"
#include "wgs/waveguide.hpp"

using namespace wgs;

namespace {

double max_diff(const CylinderField& a, const CylinderField& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

} // namespace

TEST_CASE("conserved quantities") {
    auto g = build_grid(64.0 * M_PI, 256, 3);
    CylinderField zero(g, Rep::fourier_xy);
    auto [m0, e0] = conserved_quantities(zero);
    CHECK(m0 == 0.0);
    CHECK(e0 == 0.0);

    auto prof = [](double xi) { return std::exp(-xi * xi); };
    CylinderField U = make_separable(g, {{1, cplx{0.3, 0.0}}}, prof);
    auto [m, e] = conserved_quantities(U);
    // oracle quadratures in the same spectral convention
    double mass_want = 0.0, kin_want = 0.0;
    for (int k = 0; k < g->n_x; ++k) {
        double xi = g->xi(k);
        double a2 = std::norm(cplx{0.3, 0.0} * prof(xi));
        mass_want += a2;
        kin_want += (xi * xi + 1.0) * a2;
    }
    mass_want *= 4.0 * M_PI * M_PI * g->dxi();
    kin_want *= 0.5 * 4.0 * M_PI * M_PI * g->dxi();
    CylinderField ph = transform(U, Rep::physical);
    double quart = 0.0;
    for (const cplx& z : ph.data()) quart += std::norm(z) * std::norm(z);
    quart *= 0.25 * g->dx() * 2.0 * M_PI / g->n_y;
    CHECK(m == doctest::Approx(mass_want).epsilon(1e-12));
    CHECK(e == doctest::Approx(kin_want + quart).epsilon(1e-12));
}

TEST_CASE("split step: linear limit, Richardson order, guards") {
    auto g = build_grid(64.0 * M_PI, 128, 3);
    auto prof = [](double xi) { return std::exp(-2.0 * xi * xi); };

    // vanishing amplitude: the splitting degenerates to the free flow
    CylinderField tiny = make_separable(g, {{1, cplx{1e-8, 0.0}}}, prof);
    dealias_x(tiny); // same band as the stepper keeps
    SplitStepConfig ss;
    ss.dt = 1e-2;
    auto run = evolve_waveguide(tiny, 1.0, ss, {1.0});
    CylinderField lin = free_evolve(tiny, 1.0);
    CHECK(max_diff(run.traj.states.back(), lin) < 1e-12 * sup_abs(tiny));

    // step halving: second-order global error; cubic harmonics inside the
    // retained band in both variables
    auto g9 = build_grid(64.0 * M_PI, 128, 9);
    auto sharp = [](double xi) { return std::exp(-8.0 * xi * xi); };
    CylinderField U0 = make_separable(g9, {{1, cplx{0.5, 0.0}}, {3, cplx{0.0, 0.3}}}, sharp);
    auto ref = evolve_waveguide(U0, 1.0, {1.0 / 4096, 1.0}, {1.0});
    auto e1 = max_diff(evolve_waveguide(U0, 1.0, {1.0 / 128, 1.0}, {1.0}).traj.states.back(),
                       ref.traj.states.back());
    auto e2 = max_diff(evolve_waveguide(U0, 1.0, {1.0 / 256, 1.0}, {1.0}).traj.states.back(),
                       ref.traj.states.back());
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.2);

    CHECK_THROWS_AS(evolve_waveguide(U0, 100.0, ss), std::invalid_argument); // wrap guard
    CylinderField big = make_separable(g, {{1, cplx{30.0, 0.0}}}, prof);
    SplitStepConfig loose;
    loose.dt = 0.05;
    CHECK_THROWS_AS(evolve_waveguide(big, 1.0, loose), std::runtime_error); // stability guard
}

TEST_CASE("x-independent data reduces to the half-wave flow") {
    auto g = build_grid(16.0 * M_PI, 16, 3);
    // xi = 0 slice only: physical amplitude u corresponds to density u/dxi
    CylinderField U0(g, Rep::fourier_xy);
    U0.mode(1)[0] = 0.3 / g->dxi();
    U0.mode(3)[0] = 0.06 / g->dxi();
    SplitStepConfig ss;
    ss.dt = 1e-4;
    auto run = evolve_waveguide(U0, 5.0, ss, {5.0});

    TorusField u0(3);
    u0.at(1) = 0.3;
    u0.at(3) = 0.06;
    auto hw = halfwave_evolve(u0, 5.0, 1e-11, {5.0});
    const TorusField& u5 = hw.states.back();
    const CylinderField& U5 = run.traj.states.back();
    for (int p = -3; p <= 3; ++p) {
        cplx grid_mode = U5.mode(p)[0] * g->dxi();
        CHECK(std::abs(grid_mode - u5.at(p)) < 1e-7);
    }
}

TEST_CASE("profile: gauge identity and equation consistency") {
    auto g = build_grid(64.0 * M_PI, 128, 3);
    auto prof = [](double xi) { return std::exp(-2.0 * xi * xi); };
    CylinderField U0 = make_separable(g, {{1, cplx{0.5, 0.0}}, {3, cplx{0.2, 0.1}}}, prof);

    CHECK(max_diff(profile_of(U0, 0.0), transform(U0, Rep::fourier_xy)) == 0.0);

    // finite-difference dF/dt against -i N^t[F,F,F] along the split-step flow
    SplitStepConfig ss;
    ss.dt = 5e-5;
    double h = 1e-3;
    auto run = evolve_waveguide(U0, 1.0 + h, ss, {1.0 - h, 1.0, 1.0 + h});
    CylinderField Fm = profile_of(run.traj.states[0], run.traj.times[0]);
    CylinderField F0 = profile_of(run.traj.states[1], run.traj.times[1]);
    CylinderField Fp = profile_of(run.traj.states[2], run.traj.times[2]);
    CylinderField N = trilinear_N(F0, F0, F0, 1.0, false);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < N.data().size(); ++i) {
        cplx fd = (Fp.data()[i] - Fm.data()[i]) / (2.0 * h);
        cplx rhs = cplx{0.0, -1.0} * N.data()[i];
        worst = std::max(worst, std::abs(fd - rhs));
        scale = std::max(scale, std::abs(rhs));
    }
    CHECK(worst < 1e-3 * scale);

    // gauge consistency: profile-equation integration matches the split flow
    auto ptraj = evolve_profile(U0, 0.0, 2.0, 1e-10, {2.0});
    auto srun = evolve_waveguide(U0, 2.0, {1e-4, 2.0}, {2.0});
    CylinderField from_profile = free_evolve(ptraj.states.back(), 2.0);
    CHECK(max_diff(from_profile, srun.traj.states.back()) < 1e-6);
}

TEST_CASE("trilinear nonlinearity") {
    auto g = build_grid(32.0 * M_PI, 64, 4);
    auto prof = [&](double xi) { return std::exp(-8.0 * xi * xi); };
    CylinderField F = make_separable(g, {{1, cplx{0.8, 0.0}}, {-1, cplx{0.0, 0.4}}}, prof);
    dealias_x(F); // band-limit the input the way the operator does

    // t = 0: plain dealiased cubic product
    CylinderField N0 = trilinear_N(F, F, F, 0.0, false);
    CylinderField ph = transform(F, Rep::physical);
    for (cplx& z : ph.data()) z *= std::norm(z);
    CylinderField cubic = transform(ph, Rep::fourier_xy);
    dealias_x(cubic);
    CHECK(max_diff(N0, cubic) < 1e-12 * sup_abs(cubic));

    // single torus mode: one surviving tuple, so resonant equals full
    CylinderField S = make_separable(g, {{2, cplx{0.5, 0.2}}}, prof);
    CylinderField full = trilinear_N(S, S, S, 3.7, false);
    CylinderField res = trilinear_N(S, S, S, 3.7, true);
    CHECK(max_diff(full, res) < 1e-12 * sup_abs(full));

    // two-path identity: full product vs level-sum assembly
    CylinderField A = random_field(g, 5, 0.3 * g->xi_max(), 4);
    CylinderField B = random_field(g, 6, 0.3 * g->xi_max(), 4);
    CylinderField C = random_field(g, 7, 0.3 * g->xi_max(), 4);
    CylinderField fullN = trilinear_N(A, B, C, 2.3, false);
    CylinderField assembled = trilinear_by_levels(A, B, C, 2.3);
    CHECK(max_diff(fullN, assembled) < 1e-11 * sup_abs(fullN));

    auto g2 = build_grid(32.0 * M_PI, 64, 4);
    CylinderField other(g2, Rep::fourier_xy);
    CHECK_THROWS_AS(trilinear_N(A, B, transform(other, Rep::physical), 1.0, false),
                    std::invalid_argument);
}

TEST_CASE("stationary phase deficit basics") {
    auto g = build_grid(256.0 * M_PI, 512, 3);
    CylinderField zero(g, Rep::fourier_xy);
    auto series = stationary_phase_deficit(zero, {10.0, 20.0});
    CHECK(series.d_ys[0] == 0.0);
    CHECK(series.d_ys[1] == 0.0);

    CylinderField F = make_separable(g, {{1, cplx{1.0, 0.0}}, {3, cplx{0.5, 0.0}}},
                                     [](double xi) { return std::exp(-4.0 * xi * xi); });
    auto s2 = stationary_phase_deficit(F, {10.0, 40.0});
    CHECK(s2.d_ys[1] < s2.d_ys[0]);
    CHECK_THROWS_AS(stationary_phase_deficit(F, {1e6}), std::invalid_argument);
}

TEST_CASE("odd-mode support is invariant under the full flow") {
    auto g = build_grid(64.0 * M_PI, 128, 5);
    CylinderField U0 = make_separable(g, {{1, cplx{0.3, 0.0}}, {3, cplx{0.0, 0.2}}},
                                      [](double xi) { return std::exp(-8.0 * xi * xi); });
    SplitStepConfig ss;
    ss.dt = 5e-3;
    auto run = evolve_waveguide(U0, 4.0, ss, {4.0});
    CHECK(even_mode_fraction(run.traj.states.back()) < 1e-24);
}

TEST_CASE("half-wave evolution") {
    double tol = 1e-10;
    TorusField u0(4);
    cplx a{0.5, -0.2};
    u0.at(1) = a;
    auto traj = halfwave_evolve(u0, 10.0, tol, {10.0});
    cplx want = a * std::polar(1.0, -10.0 * (1.0 + std::norm(a)));
    CHECK(std::abs(traj.states.back().at(1) - want) < 10.0 * tol);

    TorusField w0(6);
    w0.at(1) = 0.4;
    w0.at(-1) = cplx{0.0, 0.2};
    w0.at(3) = 0.1;
    auto wt = halfwave_evolve(w0, 100.0, 1e-10);
    CHECK(wt.mass_drift < 1e-9);
    CHECK(wt.energy_drift < 1e-8);
    // odd data stays odd
    for (const TorusField& u : wt.states)
        for (int p = -6; p <= 6; p += 2) CHECK(std::abs(u.at(p)) < 1e-12);
}
