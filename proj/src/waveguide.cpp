#include "wgs/waveguide.hpp"

#include "wgs/fft.hpp"
#include "wgs/ode.hpp"
#include "wgs/resonance.hpp"
#include "wgs/simd.hpp"

#include <algorithm>

namespace wgs {

void dealias_x(CylinderField& f, double frac) {
    const auto& g = f.grid();
    double cut = frac * g.xi_max();
    for (int r = 0; r < f.rows(); ++r) {
        cplx* row = f.row(r);
        for (int k = 0; k < g.n_x; ++k)
            if (std::fabs(g.xi(k)) > cut) row[k] = cplx{0.0, 0.0};
    }
}

std::pair<double, double> conserved_quantities(const CylinderField& U) {
    CylinderField Uxy = U.rep() == Rep::fourier_xy ? U : transform(U, Rep::fourier_xy);
    const auto& g = Uxy.grid();
    double mass = 0.0, kinetic = 0.0;
    for (int p = -g.p_max; p <= g.p_max; ++p) {
        const cplx* row = Uxy.mode(p);
        for (int k = 0; k < g.n_x; ++k) {
            double a = std::norm(row[k]);
            mass += a;
            kinetic += (g.xi(k) * g.xi(k) + std::abs(p)) * a;
        }
    }
    const double measure = 4.0 * M_PI * M_PI * g.dxi();
    mass *= measure;
    kinetic *= 0.5 * measure;
    CylinderField ph = transform(Uxy, Rep::physical);
    double quart = 0.0;
    for (const cplx& z : ph.data()) {
        double a = std::norm(z);
        quart += a * a;
    }
    quart *= 0.25 * g.dx() * (2.0 * M_PI / g.n_y);
    return {mass, kinetic + quart};
}

WaveguideRun evolve_waveguide(const CylinderField& U0, double t_end, const SplitStepConfig& cfg,
                              std::vector<double> snaps) {
    CylinderField U = U0.rep() == Rep::fourier_xy ? U0 : transform(U0, Rep::fourier_xy);
    const auto& g = U.grid();
    if (t_end > 0.8 * g.t_wrap()) throw std::invalid_argument("evolve_waveguide: beyond 0.8*t_wrap");
    if (snaps.empty()) snaps.push_back(t_end);
    std::sort(snaps.begin(), snaps.end());

    dealias_x(U, cfg.dealias);
    WaveguideRun run;
    auto checkpoint = [&](double t) {
        auto [m, e] = conserved_quantities(U);
        run.conservation.push_back({t, m, e});
    };
    checkpoint(0.0);

    const long n_steps = std::max(1L, std::lround(t_end / cfg.dt));
    const double dt = t_end / n_steps;
    std::size_t snap_idx = 0;
    double next_check = cfg.checkpoint_dt;
    auto take_snaps = [&](double t) {
        while (snap_idx < snaps.size() && snaps[snap_idx] <= t + 0.5 * dt) {
            run.traj.times.push_back(t);
            run.traj.states.push_back(U);
            ++snap_idx;
        }
    };
    take_snaps(0.0);

    for (long s = 0; s < n_steps; ++s) {
        U = free_evolve(U, 0.5 * dt);
        CylinderField ph = transform(U, Rep::physical);
        double max_sq = 0.0;
        cplx* data = ph.data().data();
        const std::size_t n = ph.data().size();
        for (std::size_t i = 0; i < n; ++i) {
            double a = std::norm(data[i]);
            max_sq = std::max(max_sq, a);
            data[i] *= std::polar(1.0, -a * dt);
        }
        if (dt > 0.1 / std::max(max_sq, 1e-300))
            throw std::runtime_error("evolve_waveguide: dt stability guard violated");
        U = transform(ph, Rep::fourier_xy);
        dealias_x(U, cfg.dealias);
        U = free_evolve(U, 0.5 * dt);
        double t = (s + 1) * dt;
        take_snaps(t);
        if (t + 1e-12 >= next_check || s + 1 == n_steps) {
            checkpoint(t);
            next_check += cfg.checkpoint_dt;
        }
    }
    return run;
}

CylinderField profile_of(const CylinderField& U, double t) {
    CylinderField Uxy = U.rep() == Rep::fourier_xy ? U : transform(U, Rep::fourier_xy);
    return free_evolve(Uxy, -t);
}

namespace {

void check_same_grid(const CylinderField& a, const CylinderField& b, const CylinderField& c) {
    const auto &ga = a.grid(), &gb = b.grid(), &gc = c.grid();
    bool same = ga.L == gb.L && ga.n_x == gb.n_x && ga.p_max == gb.p_max && ga.L == gc.L &&
                ga.n_x == gc.n_x && ga.p_max == gc.p_max;
    if (!same) throw std::invalid_argument("trilinear_N: grid mismatch");
}

// physical line values of e^{it d_xx} applied to a density row
std::vector<cplx> row_free_phys(const CylinderGrid& g, const cplx* row, double t, double cut) {
    std::vector<cplx> buf(row, row + g.n_x);
    const double scale = g.dxi();
    for (int k = 0; k < g.n_x; ++k) {
        double xi = g.xi(k);
        if (std::fabs(xi) > cut) {
            buf[k] = cplx{0.0, 0.0};
            continue;
        }
        buf[k] *= std::polar(scale, -t * xi * xi);
        if (k & 1) buf[k] = -buf[k];
    }
    fft::dft(buf.data(), g.n_x, fft::backward);
    return buf;
}

// inverse of row_free_phys's framing: physical -> density row, then e^{+it d_xx}
void phys_to_row_free(const CylinderGrid& g, std::vector<cplx>& buf, double t, double cut,
                      cplx* out_row) {
    fft::dft(buf.data(), g.n_x, fft::forward);
    const double scale = g.dx() / (2.0 * M_PI);
    for (int k = 0; k < g.n_x; ++k) {
        double xi = g.xi(k);
        cplx v = buf[k];
        if (std::fabs(xi) > cut) {
            out_row[k] += cplx{0.0, 0.0};
            continue;
        }
        v *= std::polar(scale, t * xi * xi);
        if (k & 1) v = -v;
        out_row[k] += v;
    }
}

CylinderField trilinear_full(const CylinderField& F, const CylinderField& G, const CylinderField& H,
                             double t, double frac) {
    CylinderField Ft = free_evolve(F, t);
    CylinderField Gt = free_evolve(G, t);
    CylinderField Ht = free_evolve(H, t);
    dealias_x(Ft, frac);
    dealias_x(Gt, frac);
    dealias_x(Ht, frac);
    CylinderField fph = transform(Ft, Rep::physical);
    CylinderField gph = transform(Gt, Rep::physical);
    CylinderField hph = transform(Ht, Rep::physical);
    CylinderField prod(F.grid_ptr(), Rep::physical);
    simd::cmul3_acc(prod.data().data(), fph.data().data(), gph.data().data(), hph.data().data(),
                    prod.data().size());
    CylinderField out = free_evolve(transform(prod, Rep::fourier_xy), -t);
    dealias_x(out, frac);
    return out;
}

enum class LevelMode { resonant_only, all_levels };

CylinderField trilinear_kernel_sum(const CylinderField& F, const CylinderField& G,
                                   const CylinderField& H, double t, LevelMode mode, double frac) {
    const auto& g = F.grid();
    if (g.p_max > 16) throw std::invalid_argument("trilinear_N: p_max > 16 for kernel assembly");
    const double cut = frac * g.xi_max();

    // physical values of U(t) applied to every input mode row
    auto all_rows = [&](const CylinderField& X) {
        std::vector<std::vector<cplx>> rows(g.n_modes());
        for (int p = -g.p_max; p <= g.p_max; ++p)
            rows[p + g.p_max] = row_free_phys(g, X.mode(p), t, cut);
        return rows;
    };
    auto fr = all_rows(F), gr = all_rows(G), hr = all_rows(H);

    // accumulate the physical products per output mode, then one U(-t) each
    std::vector<std::vector<cplx>> acc(g.n_modes());
    std::vector<std::vector<cplx>> acc_phase; // per (p, omega) for all_levels
    std::vector<std::pair<int, int>> phase_keys;
    auto slot = [&](int p, int omega) -> std::vector<cplx>& {
        if (mode == LevelMode::resonant_only) {
            auto& a = acc[p + g.p_max];
            if (a.empty()) a.assign(g.n_x, cplx{0.0, 0.0});
            return a;
        }
        for (std::size_t i = 0; i < phase_keys.size(); ++i)
            if (phase_keys[i] == std::make_pair(p, omega)) return acc_phase[i];
        phase_keys.emplace_back(p, omega);
        acc_phase.emplace_back(g.n_x, cplx{0.0, 0.0});
        return acc_phase.back();
    };

    for (int q = -g.p_max; q <= g.p_max; ++q)
        for (int r = -g.p_max; r <= g.p_max; ++r)
            for (int s = -g.p_max; s <= g.p_max; ++s) {
                int p = q - r + s;
                if (std::abs(p) > g.p_max) continue;
                int omega = std::abs(p) - std::abs(q) + std::abs(r) - std::abs(s);
                if (mode == LevelMode::resonant_only && omega != 0) continue;
                simd::cmul3_acc(slot(p, omega).data(), fr[q + g.p_max].data(),
                                gr[r + g.p_max].data(), hr[s + g.p_max].data(), g.n_x);
            }

    CylinderField out(F.grid_ptr(), Rep::fourier_xy);
    if (mode == LevelMode::resonant_only) {
        for (int p = -g.p_max; p <= g.p_max; ++p) {
            auto& a = acc[p + g.p_max];
            if (a.empty()) continue;
            phys_to_row_free(g, a, t, cut, out.mode(p));
        }
    } else {
        for (std::size_t i = 0; i < phase_keys.size(); ++i) {
            auto [p, omega] = phase_keys[i];
            cplx ph = std::polar(1.0, t * omega);
            for (cplx& z : acc_phase[i]) z *= ph;
            phys_to_row_free(g, acc_phase[i], t, cut, out.mode(p));
        }
    }
    return out;
}

} // namespace

CylinderField trilinear_N(const CylinderField& F, const CylinderField& G, const CylinderField& H,
                          double t, bool resonant_only) {
    if (F.rep() != Rep::fourier_xy || G.rep() != Rep::fourier_xy || H.rep() != Rep::fourier_xy)
        throw std::invalid_argument("trilinear_N: needs fourier_xy");
    check_same_grid(F, G, H);
    const double frac = 2.0 / 3.0;
    if (!resonant_only) return trilinear_full(F, G, H, t, frac);
    return trilinear_kernel_sum(F, G, H, t, LevelMode::resonant_only, frac);
}

CylinderField trilinear_by_levels(const CylinderField& F, const CylinderField& G,
                                  const CylinderField& H, double t) {
    check_same_grid(F, G, H);
    return trilinear_kernel_sum(F, G, H, t, LevelMode::all_levels, 2.0 / 3.0);
}

DeficitSeries stationary_phase_deficit(const CylinderField& F, const std::vector<double>& ts,
                                       const NormParams& np) {
    const auto& g = F.grid();
    for (double t : ts)
        if (t < 1.0 || t > 0.8 * g.t_wrap())
            throw std::invalid_argument("stationary_phase_deficit: t outside [1, 0.8*t_wrap]");
    CylinderField R = resonant_trilinear(F, F, F, RVariant::full);
    NormParams ys = np;
    ys.s = 1.5;
    double r_l2 = l2_norm(R);
    DeficitSeries out;
    for (double t : ts) {
        CylinderField N0 = trilinear_N(F, F, F, t, /*resonant_only*/ true);
        CylinderField D = N0;
        const double w = M_PI / t;
        for (std::size_t i = 0; i < D.data().size(); ++i) D.data()[i] -= w * R.data()[i];
        out.ts.push_back(t);
        out.d_ys.push_back(cylinder_norm(D, CylWhich::Ys, ys));
        out.d_l2.push_back(l2_norm(D));
        out.l2_ratio.push_back(t * l2_norm(N0) / (M_PI * r_l2));
    }
    // least-squares slope of log d_ys against log t
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < out.ts.size(); ++i) {
        if (out.d_ys[i] <= 0.0) continue;
        double x = std::log(out.ts[i]), y = std::log(out.d_ys[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) out.slope_ys = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

HalfwaveTrajectory halfwave_evolve(const TorusField& u0, double t_end, double tol,
                                   std::vector<double> snaps) {
    const int p_max = u0.p_max;
    const int nm = 2 * p_max + 1;
    int n_pad = 16;
    while (n_pad < 4 * p_max + 2) n_pad <<= 1;
    if (snaps.empty()) {
        int k = 16;
        for (int i = 0; i <= k; ++i) snaps.push_back(t_end * i / k);
    }
    std::sort(snaps.begin(), snaps.end());

    auto to_u = [&](double t, const std::vector<cplx>& w) {
        TorusField u(p_max);
        for (int p = -p_max; p <= p_max; ++p)
            u.at(p) = std::polar(1.0, -t * std::abs(p)) * w[p + p_max];
        return u;
    };
    std::vector<cplx> pad(n_pad);
    auto rhs = [&](double t, const std::vector<cplx>& w, std::vector<cplx>& dw) {
        std::fill(pad.begin(), pad.end(), cplx{0.0, 0.0});
        for (int p = -p_max; p <= p_max; ++p) {
            int idx = p >= 0 ? p : p + n_pad;
            pad[idx] = std::polar(1.0, -t * std::abs(p)) * w[p + p_max];
        }
        fft::dft(pad.data(), n_pad, fft::backward);
        for (cplx& z : pad) z *= std::norm(z);
        fft::dft(pad.data(), n_pad, fft::forward);
        for (int p = -p_max; p <= p_max; ++p) {
            int idx = p >= 0 ? p : p + n_pad;
            dw[p + p_max] = cplx{0.0, -1.0} * std::polar(1.0, t * std::abs(p)) * pad[idx] /
                            static_cast<double>(n_pad);
        }
    };

    std::vector<cplx> w(nm);
    for (int p = -p_max; p <= p_max; ++p) w[p + p_max] = u0.at(p);

    HalfwaveTrajectory traj;
    auto energy = [&](const TorusField& u) {
        double kin = 0.0;
        for (int p = -p_max; p <= p_max; ++p) kin += std::abs(p) * std::norm(u.at(p));
        auto vals = u.values(n_pad);
        double quart = 0.0;
        for (const cplx& z : vals) {
            double m = std::norm(z);
            quart += m * m;
        }
        return 0.5 * kin + 0.25 * quart / n_pad;
    };
    double m0 = -1.0, e0 = -1.0;
    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    ode_integrate(rhs, w, 0.0, t_end, opt, snaps, [&](double t, const std::vector<cplx>& state) {
        TorusField u = to_u(t, state);
        double m = 0.0;
        for (const cplx& z : u.c) m += std::norm(z);
        double e = energy(u);
        if (m0 < 0.0) {
            m0 = m;
            e0 = e;
        }
        traj.mass_drift = std::max(traj.mass_drift, std::fabs(m - m0) / std::max(m0, 1e-300));
        traj.energy_drift = std::max(traj.energy_drift, std::fabs(e - e0) / std::max(e0, 1e-300));
        traj.times.push_back(t);
        traj.states.push_back(std::move(u));
    });
    return traj;
}

CylinderTrajectory evolve_profile(const CylinderField& F0, double t0, double t1, double tol,
                                  std::vector<double> snaps) {
    CylinderField F = F0.rep() == Rep::fourier_xy ? F0 : transform(F0, Rep::fourier_xy);
    dealias_x(F);
    std::sort(snaps.begin(), snaps.end());
    CylinderTrajectory traj;
    CylinderField work = F;
    auto rhs = [&](double t, const std::vector<cplx>& y, std::vector<cplx>& dy) {
        work.data() = y;
        CylinderField n = trilinear_N(work, work, work, t, false);
        for (std::size_t i = 0; i < dy.size(); ++i) dy[i] = cplx{0.0, -1.0} * n.data()[i];
    };
    std::vector<cplx> y = F.data();
    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-3;
    ode_integrate(rhs, y, t0, t1, opt, snaps, [&](double t, const std::vector<cplx>& state) {
        CylinderField snap = F;
        snap.data() = state;
        traj.times.push_back(t);
        traj.states.push_back(std::move(snap));
    });
    return traj;
}

} // namespace wgs
