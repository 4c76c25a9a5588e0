#include "wgs/scattering.hpp"

#include "wgs/bump.hpp"
#include "wgs/ode.hpp"
#include "wgs/resonance.hpp"
#include "wgs/simd.hpp"
#include "wgs/waveguide.hpp"

#include <algorithm>

namespace wgs {

namespace {

std::vector<double> default_taus(double tau_end, int n) {
    std::vector<double> out;
    for (int i = 0; i <= n; ++i) out.push_back(tau_end * i / n);
    return out;
}

std::vector<cplx> slice_vector(const CylinderField& G, int k) {
    const auto& g = G.grid();
    std::vector<cplx> v(g.n_modes());
    for (int p = -g.p_max; p <= g.p_max; ++p) v[p + g.p_max] = G.mode(p)[k];
    return v;
}

double slice_mass(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return s;
}

} // namespace

ResonantTrajectory resonant_evolve(const CylinderField& G0, double tau_end, double tol,
                                   ResonantMethod method, std::vector<double> snaps) {
    CylinderField G = G0.rep() == Rep::fourier_xy ? G0 : transform(G0, Rep::fourier_xy);
    const auto& g = G.grid();
    if (snaps.empty()) snaps = default_taus(tau_end, 8);
    std::sort(snaps.begin(), snaps.end());

    ResonantTrajectory traj;
    traj.taus = snaps;
    for (std::size_t i = 0; i < snaps.size(); ++i)
        traj.states.emplace_back(G.grid_ptr(), Rep::fourier_xy);

    if (method == ResonantMethod::decoupled && even_mode_fraction(G) > 1e-20)
        throw std::invalid_argument("resonant_evolve: decoupled method needs odd-mode data");

    const auto& tuples = resonant_tuples(g.p_max, RVariant::full);
    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;

    for (int k = 0; k < g.n_x; ++k) {
        std::vector<cplx> v0 = slice_vector(G, k);
        if (slice_mass(v0) == 0.0) continue; // slice stays zero

        if (method == ResonantMethod::direct) {
            auto rhs = [&](double, const std::vector<cplx>& v, std::vector<cplx>& dv) {
                std::fill(dv.begin(), dv.end(), cplx{0.0, 0.0});
                const int off = g.p_max;
                for (const auto& t : tuples)
                    dv[t[0] + off] += v[t[1] + off] * std::conj(v[t[2] + off]) * v[t[3] + off];
                for (cplx& z : dv) z *= cplx{0.0, -1.0};
            };
            std::vector<cplx> v = v0;
            std::size_t idx = 0;
            ode_integrate(rhs, v, 0.0, tau_end, opt, snaps,
                          [&](double, const std::vector<cplx>& state) {
                              CylinderField& out = traj.states[idx++];
                              for (int p = -g.p_max; p <= g.p_max; ++p)
                                  out.mode(p)[k] = state[p + g.p_max];
                          });
        } else {
            // sector masses are conserved; the cross coupling is the phase
            // e^{-2i m_mp tau} on each sector's plain Szego flow
            double m_plus = 0.0, m_minus = 0.0;
            SzegoState ap(g.p_max), am(g.p_max);
            for (int p = 1; p <= g.p_max; ++p) {
                ap.a[p] = v0[p + g.p_max];
                m_plus += std::norm(ap.a[p]);
                am.a[p] = v0[-p + g.p_max];
                m_minus += std::norm(am.a[p]);
            }
            auto tp = evolve_szego(ap, tau_end, tol, snaps);
            auto tm = evolve_szego(am, tau_end, tol, snaps);
            for (std::size_t i = 0; i < snaps.size(); ++i) {
                double tau = snaps[i];
                cplx gauge_p = std::polar(1.0, -2.0 * m_minus * tau);
                cplx gauge_m = std::polar(1.0, -2.0 * m_plus * tau);
                CylinderField& out = traj.states[i];
                for (int p = 1; p <= g.p_max; ++p) {
                    out.mode(p)[k] = gauge_p * tp.states[i].a[p];
                    out.mode(-p)[k] = gauge_m * tm.states[i].a[p];
                }
                out.mode(0)[k] = v0[g.p_max];
            }
        }
    }
    return traj;
}

double resonant_method_deviation(const CylinderField& G0, double tau_end, double tol) {
    auto snaps = default_taus(tau_end, 4);
    auto a = resonant_evolve(G0, tau_end, tol, ResonantMethod::direct, snaps);
    auto b = resonant_evolve(G0, tau_end, tol, ResonantMethod::decoupled, snaps);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        const auto& x = a.states[i].data();
        const auto& y = b.states[i].data();
        for (std::size_t j = 0; j < x.size(); ++j) worst = std::max(worst, std::abs(x[j] - y[j]));
    }
    return worst;
}

namespace {

CylinderField scattering_datum(const ScatteringConfig& cfg) {
    std::vector<std::pair<int, cplx>> modes;
    for (int p : cfg.modes) {
        if (p % 2 == 0) throw std::invalid_argument("scattering datum: modes must be odd");
        modes.emplace_back(p, cplx{cfg.eps, 0.0});
    }
    double sig = cfg.xi_sigma;
    return make_separable(cfg.grid, modes,
                          [sig](double xi) { return std::exp(-xi * xi / (2.0 * sig * sig)); });
}

std::vector<double> geometric_times(double t0, double t1, int n) {
    std::vector<double> out;
    for (int i = 0; i <= n; ++i) out.push_back(t0 * std::pow(t1 / t0, double(i) / n));
    return out;
}

} // namespace

CylinderField resonant_evolve_back(const CylinderField& G_end, double tau_back, double tol) {
    CylinderField C = G_end.rep() == Rep::fourier_xy ? G_end : transform(G_end, Rep::fourier_xy);
    for (cplx& z : C.data()) z = std::conj(z);
    auto traj = resonant_evolve(C, tau_back, tol, ResonantMethod::direct, {tau_back});
    CylinderField out = traj.states.back();
    for (cplx& z : out.data()) z = std::conj(z);
    return out;
}

ComparisonSeries modified_scattering_run(const ScatteringConfig& cfg) {
    CylinderField G0 = scattering_datum(cfg);
    const auto& g = *cfg.grid;
    if (cfg.T > 0.8 * g.t_wrap())
        throw std::invalid_argument("modified_scattering_run: T beyond wrap window");

    std::vector<double> ts = geometric_times(1.0, cfg.T, cfg.n_samples);
    double t_match = std::max(1.0, cfg.match_fraction * cfg.T);
    if (std::find(ts.begin(), ts.end(), t_match) == ts.end()) ts.push_back(t_match);
    std::sort(ts.begin(), ts.end());

    SplitStepConfig ss;
    ss.dt = cfg.dt;
    ss.checkpoint_dt = cfg.T;
    auto run = evolve_waveguide(G0, cfg.T, ss, ts);

    // wave-operator iterate: resonant data matched to the profile at t_match
    std::size_t im = 0;
    while (run.traj.times[im] != t_match) ++im;
    CylinderField F_match = profile_of(run.traj.states[im], run.traj.times[im]);
    CylinderField G_tilde0 = resonant_evolve_back(F_match, M_PI * std::log(t_match), cfg.tol);

    std::vector<double> taus;
    for (double t : ts) taus.push_back(M_PI * std::log(t));
    auto res = resonant_evolve(G_tilde0, taus.back(), cfg.tol, ResonantMethod::direct, taus);

    ComparisonSeries out;
    out.ts = ts;
    // the tau = pi ln t clock starts at t = 1, so the raw comparison starts
    // the resonant flow from the profile there
    CylinderField F1 = profile_of(run.traj.states.front(), run.traj.times.front());
    auto raw = resonant_evolve(F1, taus.back(), cfg.tol, ResonantMethod::direct, taus);
    {
        CylinderField D = G_tilde0;
        for (std::size_t j = 0; j < D.data().size(); ++j) D.data()[j] -= F1.data()[j];
        out.cauchy_diff = cylinder_norm(D, CylWhich::S, cfg.norms);
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CylinderField F = profile_of(run.traj.states[i], run.traj.times[i]);
        CylinderField D = F;
        for (std::size_t j = 0; j < D.data().size(); ++j) D.data()[j] -= res.states[i].data()[j];
        out.d_s.push_back(cylinder_norm(D, CylWhich::S, cfg.norms));
        out.d_z.push_back(cylinder_norm(D, CylWhich::Z, cfg.norms));
        CylinderField Dr = F;
        for (std::size_t j = 0; j < Dr.data().size(); ++j) Dr.data()[j] -= raw.states[i].data()[j];
        out.raw_d_s.push_back(cylinder_norm(Dr, CylWhich::S, cfg.norms));
        CylinderField D0 = F;
        for (std::size_t j = 0; j < D0.data().size(); ++j) D0.data()[j] -= F1.data()[j];
        out.d0_s.push_back(cylinder_norm(D0, CylWhich::S, cfg.norms));
    }
    out.final_ratio = out.d0_s.back() > 0.0 ? out.d_s.back() / out.d0_s.back() : 1e300;
    out.raw_ratio = out.d0_s.back() > 0.0 ? out.raw_d_s.back() / out.d0_s.back() : 1e300;
    out.pass = out.final_ratio < cfg.pass_factor;
    return out;
}

StabilityFit stability_envelope(const CylinderField& A0, const CylinderField& B0, double t_end,
                                double tol, const NormParams& np) {
    auto snaps = default_taus(t_end, 10);
    auto ta = resonant_evolve(A0, t_end, tol, ResonantMethod::direct, snaps);
    auto tb = resonant_evolve(B0, t_end, tol, ResonantMethod::direct, snaps);
    std::vector<double> d;
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        CylinderField D = ta.states[i];
        for (std::size_t j = 0; j < D.data().size(); ++j) D.data()[j] -= tb.states[i].data()[j];
        d.push_back(cylinder_norm(D, CylWhich::S, np));
    }
    StabilityFit fit;
    fit.delta = d.front();
    if (fit.delta <= 0.0)
        throw std::invalid_argument("stability_envelope: identical inputs, fit degenerate");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 1; i < snaps.size(); ++i) {
        if (d[i] <= 0.0 || snaps[i] <= 0.0) continue;
        fit.rate = std::max(fit.rate, std::log(d[i] / fit.delta) / snaps[i]);
        double x = snaps[i], y = std::log(d[i] / fit.delta);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) fit.ls_rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

ZConservationReport z_conservation_audit(const ResonantTrajectory& traj) {
    ZConservationReport rep;
    const CylinderField& G0 = traj.states.front();
    const auto& g = G0.grid();
    int n_quad = torus_quadrature_points(g.p_max);
    (void)n_quad;

    double z0 = cylinder_norm(G0, CylWhich::Z);
    for (const auto& Gt : traj.states) rep.z_band.add(cylinder_norm(Gt, CylWhich::Z) / z0);

    // mass per slice to pick the audited xi set
    double max_mass = 0.0;
    std::vector<double> mass(g.n_x, 0.0);
    for (int k = 0; k < g.n_x; ++k) {
        mass[k] = slice_mass(slice_vector(G0, k));
        max_mass = std::max(max_mass, mass[k]);
    }
    for (int k = 0; k < g.n_x; ++k) {
        if (mass[k] < 1e-8 * max_mass) continue;
        // sector Hankel states at t=0
        auto sector = [&](const CylinderField& G, int sign) {
            SzegoState s(g.p_max);
            for (int p = 1; p <= g.p_max; ++p) s.a[p] = G.mode(sign * p)[k];
            return s;
        };
        double tr0p = hankel_spectrum(sector(G0, +1), g.p_max + 1).trace_norm;
        double tr0m = hankel_spectrum(sector(G0, -1), g.p_max + 1).trace_norm;
        TorusField sl0 = G0.slice(k);
        double b10 = torus_norm(sl0, TorusWhich::B1);
        for (const auto& Gt : traj.states) {
            double trp = hankel_spectrum(sector(Gt, +1), g.p_max + 1).trace_norm;
            double trm = hankel_spectrum(sector(Gt, -1), g.p_max + 1).trace_norm;
            if (tr0p > 0.0)
                rep.max_trace_drift = std::max(rep.max_trace_drift, std::fabs(trp - tr0p) / tr0p);
            if (tr0m > 0.0)
                rep.max_trace_drift = std::max(rep.max_trace_drift, std::fabs(trm - tr0m) / tr0m);
            if (b10 > 0.0) rep.b1_band.add(torus_norm(Gt.slice(k), TorusWhich::B1) / b10);
        }
    }
    return rep;
}

GrowthFit growth_exponent_scan(const ResonantTrajectory& traj, CylWhich which,
                               const NormParams& np) {
    if (traj.taus.size() < 3) throw std::invalid_argument("growth_exponent_scan: too few snapshots");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < traj.taus.size(); ++i) {
        double t = std::exp(traj.taus[i] / M_PI);
        double nv = cylinder_norm(traj.states[i], which, np);
        if (nv <= 0.0) continue;
        pts.emplace_back(std::log1p(t), std::log(nv));
    }
    if (pts.size() < 3) throw std::invalid_argument("growth_exponent_scan: fit degeneracy");
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    int n = static_cast<int>(pts.size());
    GrowthFit fit;
    double denom = n * sxx - sx * sx;
    if (std::fabs(denom) < 1e-12) throw std::invalid_argument("growth_exponent_scan: fit degeneracy");
    fit.alpha = (n * sxy - sx * sy) / denom;
    double b = (sy - fit.alpha * sx) / n;
    for (auto [x, y] : pts) {
        double r = y - (fit.alpha * x + b);
        fit.residual += r * r;
    }
    fit.residual = std::sqrt(fit.residual / n);
    return fit;
}

TorusField cascade_datum_odd(double eps, int p_max) {
    TorusField v(p_max);
    v.at(3) = 1.0;
    v.at(1) = eps;
    return v;
}

namespace {

// |w(tau')|_{H^s}^2 on a dense grid for the odd transplant w(y)=e^{iy}v(2y),
// computed from the canonical cascade run v0 = e^{iy} + eps.
struct SzegoNormTable {
    std::vector<double> taus;
    std::vector<double> hs2; // squared H^s norm of w
    double at(double tau) const {
        if (tau <= 0.0) return hs2.front();
        if (tau >= taus.back()) return hs2.back();
        auto it = std::upper_bound(taus.begin(), taus.end(), tau);
        std::size_t i = std::min(taus.size() - 1, static_cast<std::size_t>(it - taus.begin()));
        double t0 = taus[i - 1], t1 = taus[i];
        double a = (tau - t0) / (t1 - t0);
        return (1.0 - a) * hs2[i - 1] + a * hs2[i];
    }
};

SzegoNormTable canonical_cascade_table(double eps, double s, double tau_end, double tol,
                                       int p_max) {
    SzegoState v0(p_max);
    v0.a[1] = 1.0;
    v0.a[0] = eps;
    int n_snap = 2400;
    std::vector<double> snaps;
    for (int i = 0; i <= n_snap; ++i) snaps.push_back(tau_end * i / n_snap);
    auto traj = evolve_szego(v0, tau_end, tol, snaps);
    SzegoNormTable table;
    table.taus = traj.times;
    for (const auto& st : traj.states) {
        double acc = 0.0;
        for (int q = 0; q <= st.p_max(); ++q) {
            double m = 2.0 * q + 1.0; // w mode index
            acc += std::pow(1.0 + m * m, s) * std::norm(st.a[q]);
        }
        table.hs2.push_back(acc);
    }
    return table;
}

} // namespace

CascadeResult cascade_experiment(const CascadeConfig& cfg) {
    CascadeResult out;
    const auto& g = *cfg.grid;

    // xi-profile amplitudes of the plateau datum
    std::vector<double> c(g.n_x);
    for (int k = 0; k < g.n_x; ++k)
        c[k] = cfg.amplitude * phibar(g.xi(k) / cfg.plateau_xi);

    for (double eps : cfg.eps_list) {
        double tau_max = cfg.tau_max_factor / eps;
        int pm = cfg.szego_p_max;
        if (pm == 0) pm = std::min(1536, std::max(192, static_cast<int>(std::ceil(8.0 / (eps * eps)))));
        double amp2 = cfg.amplitude * cfg.amplitude;
        auto table = canonical_cascade_table(eps, cfg.s, amp2 * tau_max + 1e-9, cfg.tol, pm);
        CascadeResult::Row row;
        row.eps = eps;
        int n_tau = 1200;
        for (int i = 0; i <= n_tau; ++i) {
            double tau = tau_max * i / n_tau;
            double acc = 0.0;
            for (int k = 0; k < g.n_x; ++k) {
                double c2 = c[k] * c[k];
                if (c2 == 0.0) continue;
                acc += c2 * table.at(c2 * tau);
            }
            double nrm = std::sqrt(4.0 * M_PI * M_PI * g.dxi() * acc);
            if (nrm > row.sup) {
                row.sup = nrm;
                row.arg_sup = tau;
            }
        }
        out.resonant.push_back(row);
    }
    out.monotone = true;
    for (std::size_t i = 1; i < out.resonant.size(); ++i)
        out.monotone &= out.resonant[i].sup > out.resonant[i - 1].sup;

    // full-flow cross-check at cfg.full_flow_eps
    double T = cfg.full_T > 0.0 ? cfg.full_T : 0.8 * g.t_wrap();
    TorusField w0 = cascade_datum_odd(cfg.full_flow_eps, g.p_max);
    std::vector<std::pair<int, cplx>> modes;
    for (int p = -g.p_max; p <= g.p_max; ++p)
        if (w0.at(p) != cplx{0.0, 0.0}) modes.emplace_back(p, w0.at(p) * cfg.full_amplitude);
    double pl = cfg.plateau_xi;
    CylinderField U0 = make_separable(cfg.grid, modes, [pl](double xi) { return phibar(xi / pl); });

    std::vector<double> ts = geometric_times(1.0, T, 14);
    SplitStepConfig ss;
    ss.dt = 0.01;
    ss.checkpoint_dt = T;
    auto run = evolve_waveguide(U0, T, ss, ts);
    NormParams np;
    np.s = cfg.s;

    int pm_full =
        std::min(1536, std::max(192, static_cast<int>(std::ceil(8.0 / (cfg.full_flow_eps *
                                                                       cfg.full_flow_eps)))));
    double A2 = cfg.full_amplitude * cfg.full_amplitude;
    auto table = canonical_cascade_table(cfg.full_flow_eps, cfg.s,
                                         A2 * M_PI * std::log(T) + 1e-9, cfg.tol, pm_full);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double full_n = cylinder_norm(run.traj.states[i], CylWhich::L2xHs_y, np);
        out.full_sup = std::max(out.full_sup, full_n);
        double tau = M_PI * std::log(ts[i]);
        double acc = 0.0;
        for (int k = 0; k < g.n_x; ++k) {
            double c2 = A2 * phibar(g.xi(k) / pl) * phibar(g.xi(k) / pl);
            if (c2 == 0.0) continue;
            acc += c2 * table.at(c2 * tau);
        }
        out.resonant_sup = std::max(out.resonant_sup, std::sqrt(4.0 * M_PI * M_PI * g.dxi() * acc));
    }
    out.agreement = std::fabs(out.full_sup / out.resonant_sup - 1.0);
    return out;
}

HalfwaveComparison halfwave_comparison(const std::vector<double>& eps_list, double s,
                                       double c_alpha, int p_max, double tol) {
    HalfwaveComparison out;
    const double base = std::sqrt(std::pow(2.0, s) + std::pow(5.0, s)); // |e^{iy}+e^{2iy}|_{H^s}
    for (double eps : eps_list) {
        double T = c_alpha / (eps * eps) * std::log(1.0 / eps);
        TorusField u0(p_max);
        u0.at(1) = eps / base;
        u0.at(2) = eps / base;
        int n_snap = 60;
        std::vector<double> snaps;
        for (int i = 1; i <= n_snap; ++i) snaps.push_back(T * i / n_snap);

        auto hw = halfwave_evolve(u0, T, tol, snaps);

        SzegoState v0(p_max);
        v0.a[1] = u0.at(1);
        v0.a[2] = u0.at(2);
        auto sz = evolve_szego(v0, T, tol, snaps);

        double worst = 0.0;
        for (std::size_t i = 0; i < snaps.size(); ++i) {
            double t = hw.times[i];
            const TorusField& u = hw.states[i];
            const SzegoState& vt = sz.states[i];
            double err2 = 0.0;
            for (int p = -p_max; p <= p_max; ++p) {
                cplx vp{0.0, 0.0};
                if (p >= 0) vp = std::polar(1.0, -t * p) * vt.a[p];
                err2 += std::pow(1.0 + static_cast<double>(p) * p, s) * std::norm(u.at(p) - vp);
            }
            worst = std::max(worst, std::sqrt(err2));
        }
        out.rows.push_back({eps, T, worst});
    }
    if (out.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (const auto& r : out.rows) {
            if (r.max_err <= 0.0) continue;
            double x = std::log(r.eps), y = std::log(r.max_err);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        if (n >= 2) out.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return out;
}

} // namespace wgs
