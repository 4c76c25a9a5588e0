#ifndef WGS_ODE_HPP
#define WGS_ODE_HPP

// Adaptive embedded Dormand-Prince 5(4) over complex state vectors, with step
// clipping to hit snapshot times exactly. Error control is the usual mixed
// absolute/relative RMS test with PI-free step adjustment.

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wgs {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double dt_init = 1e-2;
    double dt_min = 1e-13;
    long max_steps = 200000000L;
};

// rhs(t, y, dy); on_snap(t, y) fires at each requested snapshot time (sorted).
template <class RHS>
void ode_integrate(RHS&& rhs, std::vector<std::complex<double>>& y, double t0, double t1,
                   const OdeOptions& opt, const std::vector<double>& snaps = {},
                   const std::function<void(double, const std::vector<std::complex<double>>&)>&
                       on_snap = nullptr) {
    using cplx = std::complex<double>;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const std::size_t n = y.size();
    std::vector<cplx> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

    double t = t0;
    double dt = opt.dt_init;
    if (t1 < t0) throw std::invalid_argument("ode_integrate: t1 < t0");
    std::size_t snap_idx = 0;
    while (snap_idx < snaps.size() && snaps[snap_idx] <= t0 + 1e-15) {
        if (on_snap) on_snap(snaps[snap_idx], y);
        ++snap_idx;
    }

    rhs(t, y, k1);
    bool have_k1 = true;
    long steps = 0;
    while (t < t1 - 1e-14 * std::max(1.0, std::fabs(t1))) {
        if (++steps > opt.max_steps) throw std::runtime_error("ode_integrate: max step count");
        double target = t1;
        if (snap_idx < snaps.size()) target = std::min(target, snaps[snap_idx]);
        if (t + dt > target) dt = target - t;
        if (dt < opt.dt_min) throw std::runtime_error("ode_integrate: step-size underflow");

        if (!have_k1) {
            rhs(t, y, k1);
            have_k1 = true;
        }
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + dt * (a21 * k1[i]);
        rhs(t + c2 * dt, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + dt * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * dt, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + dt * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * dt, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + dt * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * dt, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + dt * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + dt, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + dt * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + dt, ynew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx e = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            double r = std::abs(e) / sc;
            err += r * r;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            t += dt;
            y.swap(ynew);
            k1.swap(k7); // FSAL
            while (snap_idx < snaps.size() && snaps[snap_idx] <= t + 1e-12 * std::max(1.0, t)) {
                if (on_snap) on_snap(snaps[snap_idx], y);
                ++snap_idx;
            }
        } else {
            have_k1 = true; // k1 still valid at unchanged t
        }
        double fac = 0.8 * std::pow(std::max(err, 1e-10), -0.2);
        dt *= std::min(5.0, std::max(0.2, fac));
    }
    while (snap_idx < snaps.size()) {
        if (on_snap) on_snap(snaps[snap_idx], y);
        ++snap_idx;
    }
}

} // namespace wgs

#endif
