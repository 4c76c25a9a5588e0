#include "wgs/dispersive.hpp"

#include "wgs/bump.hpp"
#include "wgs/fft.hpp"
#include "wgs/simd.hpp"

#include <random>

namespace wgs {

cplx dispersive_constant() {
    // (4 pi i)^{-1/2}, principal branch
    return 1.0 / std::sqrt(cplx{0.0, 4.0 * M_PI});
}

cplx gaussian_free_evolution(double x, double t) {
    cplx denom{1.0, 2.0 * t};
    return std::exp(-x * x / (2.0 * denom)) / std::sqrt(denom);
}

DispersiveResult dispersive_approximation(const CylinderGrid& g, std::span<const cplx> f, double t) {
    if (t < 1.0) throw std::invalid_argument("dispersive_approximation: t < 1");
    if (static_cast<int>(f.size()) != g.n_x) throw std::invalid_argument("dispersive_approximation: size");

    // exact grid evolution: multiplier e^{-it xi^2}
    std::vector<cplx> fhat = line_fourier(g, f);
    std::vector<cplx> ev = fhat;
    for (int k = 0; k < g.n_x; ++k) ev[k] *= std::polar(1.0, -t * g.xi(k) * g.xi(k));
    std::vector<cplx> exact = line_inverse(g, ev);

    // fhat at the off-grid points x_j/(2t) by direct quadrature
    const cplx c = dispersive_constant();
    DispersiveResult out;
    out.approx.resize(g.n_x);
    double deficit = 0.0;
    for (int j = 0; j < g.n_x; ++j) {
        double xs = g.x(j) / (2.0 * t);
        cplx acc{0.0, 0.0};
        for (int i = 0; i < g.n_x; ++i) acc += std::polar(1.0, -g.x(i) * xs) * f[i];
        acc *= g.dx();
        cplx a = c * std::polar(1.0, g.x(j) * g.x(j) / (4.0 * t)) * acc / std::sqrt(t);
        out.approx[j] = a;
        deficit = std::max(deficit, std::abs(exact[j] - a));
    }
    out.deficit = deficit;
    return out;
}

namespace {

void q_shell_spectral(const CylinderGrid& g, double N, std::vector<cplx>& buf) {
    fft::dft(buf.data(), g.n_x, fft::forward);
    const double inv = 1.0 / g.n_x;
    for (int k = 0; k < g.n_x; ++k) buf[k] *= lp_shell(g.xi(k) / N) * inv;
    fft::dft(buf.data(), g.n_x, fft::backward);
}

} // namespace

std::vector<cplx> commutator_apply(const CylinderGrid& g, double N, std::span<const cplx> v) {
    std::vector<cplx> xv(v.begin(), v.end());
    for (int j = 0; j < g.n_x; ++j) xv[j] *= g.x(j);
    q_shell_spectral(g, N, xv); // Q_N(x v)
    std::vector<cplx> qv(v.begin(), v.end());
    q_shell_spectral(g, N, qv);
    for (int j = 0; j < g.n_x; ++j) xv[j] -= g.x(j) * qv[j];
    return xv;
}

std::vector<cplx> commutator_apply_spectral(const CylinderGrid& g, double N, std::span<const cplx> vhat) {
    std::vector<cplx> v(vhat.begin(), vhat.end());
    fft::dft(v.data(), g.n_x, fft::backward);
    for (auto& z : v) z /= g.n_x;
    auto w = commutator_apply(g, N, v);
    fft::dft(w.data(), g.n_x, fft::forward);
    return w;
}

double commutator_norm_estimate(const CylinderGrid& g, double N, int max_iter, double tol) {
    if (N > 0.5 * g.xi_max()) throw std::invalid_argument("commutator_norm_estimate: N > xi_max/2");
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // The box coordinate wraps at +-L/2; restricting the iteration to interior
    // functions keeps the estimate on the line operator rather than the jump.
    std::vector<double> window(g.n_x);
    for (int j = 0; j < g.n_x; ++j) window[j] = phibar(g.x(j) / (0.3 * g.L));
    auto windowed = [&](const std::vector<cplx>& in) {
        std::vector<cplx> w(in);
        for (int j = 0; j < g.n_x; ++j) w[j] *= window[j];
        w = commutator_apply(g, N, w);
        for (int j = 0; j < g.n_x; ++j) w[j] *= window[j];
        return w;
    };

    std::vector<cplx> v(g.n_x);
    for (auto& z : v) z = cplx{gauss(rng), gauss(rng)};

    // power iteration on T^* T = -T^2 (T is anti-selfadjoint here)
    double prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        auto w = windowed(v);
        auto u = windowed(w);
        for (auto& z : u) z = -z;
        double nn = std::sqrt(simd::sumsq(u.data(), u.size()));
        if (nn == 0.0) return 0.0;
        double lam = 0.0; // Rayleigh quotient <v, u> / <v, v>
        cplx dot{0.0, 0.0};
        for (int j = 0; j < g.n_x; ++j) dot += std::conj(v[j]) * u[j];
        lam = dot.real() / simd::sumsq(v.data(), v.size());
        for (int j = 0; j < g.n_x; ++j) v[j] = u[j] / nn;
        if (it > 4 && std::fabs(lam - prev) <= tol * std::fabs(lam)) return std::sqrt(lam) * N;
        prev = lam;
    }
    throw std::runtime_error("commutator_norm_estimate: power iteration did not converge");
}

} // namespace wgs
