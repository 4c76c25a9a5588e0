#include <doctest.h>

#include "wgs/config.hpp"
#include "wgs/io.hpp"
#include "wgs/norms.hpp"
#include "wgs/ode.hpp"
#include "wgs/resonance.hpp"
#include "wgs/scattering.hpp"
#include "wgs/waveguide.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wgs;

TEST_CASE("resonant evolution: single-mode phase rotation") {
    auto g = build_grid(32.0 * M_PI, 32, 3);
    CylinderField G0(g, Rep::fourier_xy);
    for (int k = 8; k < 16; ++k) G0.mode(1)[k] = cplx{0.5, 0.3};
    double tau = 4.0;
    auto traj = resonant_evolve(G0, tau, 1e-11, ResonantMethod::direct, {tau});
    for (int k = 0; k < g->n_x; ++k) {
        cplx a = G0.mode(1)[k];
        cplx want = a * std::polar(1.0, -std::norm(a) * tau);
        CHECK(std::abs(traj.states.back().mode(1)[k] - want) < 1e-9);
    }
}

TEST_CASE("separable data reproduces the profile-rescaled solution") {
    // G0 = phi(xi) g_p evolves as phi(xi) a_p(phi(xi)^2 tau)
    auto g = build_grid(32.0 * M_PI, 64, 5);
    auto prof = [](double xi) { return std::exp(-xi * xi); };
    CylinderField G0 = make_separable(g, {{1, cplx{0.4, 0.0}}, {3, cplx{0.0, 0.3}}}, prof);
    double tau = 6.0;
    auto traj = resonant_evolve(G0, tau, 1e-11, ResonantMethod::direct, {tau});

    const auto& tuples = resonant_tuples(g->p_max, RVariant::full);
    for (int k : {0, 3, 9, 17, 40}) {
        double phi = prof(g->xi(k));
        if (phi < 1e-6) continue;
        // independent slice integration of i a' = R[a] at unit profile,
        // evaluated at the rescaled time phi^2 tau
        std::vector<cplx> a(2 * g->p_max + 1);
        a[1 + g->p_max] = cplx{0.4, 0.0};
        a[3 + g->p_max] = cplx{0.0, 0.3};
        auto rhs = [&](double, const std::vector<cplx>& y, std::vector<cplx>& dy) {
            std::fill(dy.begin(), dy.end(), cplx{0.0, 0.0});
            for (const auto& t : tuples)
                dy[t[0] + g->p_max] +=
                    y[t[1] + g->p_max] * std::conj(y[t[2] + g->p_max]) * y[t[3] + g->p_max];
            for (cplx& z : dy) z *= cplx{0.0, -1.0};
        };
        OdeOptions opt;
        opt.rtol = 1e-11;
        opt.atol = 1e-13;
        ode_integrate(rhs, a, 0.0, phi * phi * tau, opt);
        for (int p = -g->p_max; p <= g->p_max; ++p)
            CHECK(std::abs(traj.states.back().mode(p)[k] - phi * a[p + g->p_max]) < 1e-7);
    }
}

TEST_CASE("z audit on single-mode plateau data is exactly flat") {
    // xi-plateau (indicator) profile: the phase rotation is uniform over the
    // support, so every norm is constant along the flow
    auto g = build_grid(32.0 * M_PI, 32, 3);
    CylinderField G0(g, Rep::fourier_xy);
    for (int k = 0; k < g->n_x; ++k)
        G0.mode(1)[k] = std::fabs(g->xi(k)) <= 1.0 ? cplx{0.4, 0.1} : cplx{0.0, 0.0};
    auto traj = resonant_evolve(G0, 8.0, 1e-11, ResonantMethod::direct);
    auto rep = z_conservation_audit(traj);
    CHECK(rep.max_trace_drift < 1e-9);
    CHECK(rep.b1_band.hi - rep.b1_band.lo < 1e-9);
    CHECK(rep.z_band.hi - rep.z_band.lo < 1e-9);

    auto fit = growth_exponent_scan(traj, CylWhich::S);
    CHECK(std::fabs(fit.alpha) < 1e-6);
}

TEST_CASE("stability envelope") {
    auto g = build_grid(32.0 * M_PI, 32, 5);
    auto prof = [](double xi) { return std::exp(-xi * xi); };
    CylinderField A0 = make_separable(g, {{1, cplx{0.3, 0.0}}, {3, cplx{0.15, 0.0}}}, prof);
    CHECK_THROWS_AS(stability_envelope(A0, A0, 10.0), std::invalid_argument);

    // generic small perturbation in a different mode shape
    CylinderField B0 = A0;
    for (int k = 0; k < g->n_x; ++k) B0.mode(3)[k] += 1e-6 * prof(g->xi(k));
    auto fit = stability_envelope(A0, B0, 50.0, 1e-10);
    CHECK(fit.delta > 0.0);
    CHECK(fit.delta < 1e-2);
    CHECK(fit.rate < 1.0); // log-linear envelope with a sane constant

    // amplitude doubling scales the envelope rate like theta^2
    CylinderField A2 = A0, B2 = B0;
    for (cplx& z : A2.data()) z *= 2.0;
    for (cplx& z : B2.data()) z *= 2.0;
    auto fit2 = stability_envelope(A2, B2, 50.0, 1e-10);
    REQUIRE(fit.rate > 1e-5);
    double ratio = fit2.rate / fit.rate;
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
}

TEST_CASE("half-wave comparison and numerics control") {
    // single mode: the Szego side with the |D| gauge matches exactly
    auto one = halfwave_comparison({0.1}, 1.5, 0.3, 8, 1e-11);
    // max_err is polluted only by integrator noise for two-mode data; for a
    // genuinely single-mode check use the direct flows
    TorusField u0(8);
    u0.at(1) = 0.1;
    auto hw = halfwave_evolve(u0, 20.0, 1e-11, {20.0});
    SzegoState v0(8);
    v0.a[1] = 0.1;
    auto sz = evolve_szego(v0, 20.0, 1e-11, {20.0});
    cplx v_gauged = std::polar(1.0, -20.0 * 1.0) * sz.states.back().a[1];
    CHECK(std::abs(hw.states.back().at(1) - v_gauged) < 1e-9);

    // error at fixed eps is stable when the tolerance tightens
    auto loose = halfwave_comparison({0.1}, 1.5, 0.3, 32, 1e-8);
    auto tight = halfwave_comparison({0.1}, 1.5, 0.3, 32, 1e-11);
    CHECK(std::fabs(loose.rows[0].max_err - tight.rows[0].max_err) <
          0.02 * tight.rows[0].max_err);
    CHECK(one.rows[0].window > 0.0);
}

TEST_CASE("scattering comparison in the near-linear regime") {
    // nonlinearity effectively off: both flows freeze and the deficit is a
    // tiny constant
    ScatteringConfig cfg;
    cfg.grid = build_grid(256.0 * M_PI, 256, 3);
    cfg.eps = 1e-6;
    cfg.T = 20.0;
    cfg.n_samples = 4;
    cfg.dt = 0.02;
    auto s = modified_scattering_run(cfg);
    double f_scale = 0.0;
    for (double v : s.d0_s) f_scale = std::max(f_scale, v);
    CHECK(f_scale < 1e-12); // the profile barely moves
    for (double v : s.d_s) CHECK(v < 1e-12);
}

TEST_CASE("odd cascade datum is conjugate to the canonical one") {
    // w(t,y) = e^{iy} v(t,2y) maps Szego solutions to Szego solutions
    double eps = 0.2, tau = 5.0;
    SzegoState v0(40);
    v0.a[1] = 1.0;
    v0.a[0] = eps;
    auto vt = evolve_szego(v0, tau, 1e-11, {tau});

    SzegoState w0(81);
    w0.a[3] = 1.0;
    w0.a[1] = eps;
    auto wt = evolve_szego(w0, tau, 1e-11, {tau});

    for (int q = 0; q <= 39; ++q)
        CHECK(std::abs(wt.states.back().a[2 * q + 1] - vt.states.back().a[q]) < 1e-8);
    for (int p = 0; p <= 81; p += 2) CHECK(std::abs(wt.states.back().a[p]) < 1e-10);
}

TEST_CASE("config parsing and overrides") {
    std::string base = R"({"grid":{"L":100.0,"n_x":64,"p_max":3},"seed":7})";
    auto cfg = load_config(base);
    CHECK(cfg.n_x == 64);
    CHECK(cfg.seed == 7);

    auto cfg2 = load_config(base, {"grid.n_x=128", "initial.eps=0.07"});
    CHECK(cfg2.n_x == 128);
    CHECK(cfg2.eps == doctest::Approx(0.07));

    CHECK_THROWS_WITH_AS(load_config(R"({"grid":{"L":1.0,"p_max":3}})"),
                         doctest::Contains("grid.n_x"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(load_config(R"({"grid":{"L":1.0,"n_x":64,"p_max":3},"bogus":1})"),
                         doctest::Contains("bogus"), std::invalid_argument);
}

TEST_CASE("checkpoint round trip and manifest") {
    auto g = build_grid(32.0 * M_PI, 32, 2);
    CylinderField F = random_field(g, 3, 1.0, 2);
    std::ostringstream os;
    write_checkpoint(os, 1.5, F);
    auto [t, back] = read_checkpoint_line(os.str());
    CHECK(t == 1.5);
    REQUIRE(back.data().size() == F.data().size());
    for (std::size_t i = 0; i < F.data().size(); ++i) CHECK(back.data()[i] == F.data()[i]);

    auto dir = std::filesystem::temp_directory_path() / "wgs_test_out";
    RunManifest m;
    m.experiment = "unit";
    m.criteria["x"] = true;
    m.write(dir / "manifest.json");
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    CsvWriter csv(dir / "series" / "s.csv");
    csv.row(1.0, "a", 2.0);
    CHECK(std::filesystem::exists(dir / "series" / "s.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("determinism of the resonant experiment") {
    auto g = build_grid(32.0 * M_PI, 32, 5);
    CylinderField G0 = random_field(g, 42, 0.5 * g->xi_max(), 5, true);
    for (cplx& z : G0.data()) z *= 0.2;
    auto a = resonant_evolve(G0, 5.0, 1e-10, ResonantMethod::direct);
    auto b = resonant_evolve(G0, 5.0, 1e-10, ResonantMethod::direct);
    for (std::size_t i = 0; i < a.states.size(); ++i)
        for (std::size_t j = 0; j < a.states[i].data().size(); ++j)
            CHECK(a.states[i].data()[j] == b.states[i].data()[j]);
}
