#ifndef WGS_DISPERSIVE_HPP
#define WGS_DISPERSIVE_HPP

// Elementary dispersive diagnostics for the line factor: the stationary-phase
// approximation of e^{it d_xx} and the [Q_N, x] commutator norm.

#include "wgs/field.hpp"

namespace wgs {

// Leading asymptotic of the free propagator,
//   (e^{it d_xx} f)(x) ~ c e^{i x^2/(4t)} fhat(x/(2t)) / sqrt(t),
// where the complex constant c is pinned by the exact Gaussian evolution
// (1+2it)^{-1/2} e^{-x^2/(2(1+2it))}; its closed form is (4 pi i)^{-1/2}.
cplx dispersive_constant();

struct DispersiveResult {
    std::vector<cplx> approx; // on the x grid
    double deficit;           // sup_x |exact - approx|
};

// f is a 1-D profile on the x grid. Requires t >= 1.
DispersiveResult dispersive_approximation(const CylinderGrid& g, std::span<const cplx> f, double t);

// Closed-form e^{it d_xx} of the unit Gaussian e^{-x^2/2}, for oracles.
cplx gaussian_free_evolution(double x, double t);

// [Q_N, x] applied to a physical-space profile (Q_N = phi(xi/N) shell in xi).
std::vector<cplx> commutator_apply(const CylinderGrid& g, double N, std::span<const cplx> v);
// Same operator conjugated to spectral storage: vhat -> fft([Q_N,x] ifft vhat).
std::vector<cplx> commutator_apply_spectral(const CylinderGrid& g, double N, std::span<const cplx> vhat);

// Power-iteration estimate of the L2->L2 norm of [Q_N, x]; returns estimate*N,
// which stays in a fixed band over dyadic N (the discrete form of the N^{-1}
// commutator bound). Requires N <= xi_max/2; throws on non-convergence.
double commutator_norm_estimate(const CylinderGrid& g, double N, int max_iter = 2000,
                                double tol = 1e-9);

} // namespace wgs

#endif
