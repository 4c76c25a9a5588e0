#ifndef WGS_WAVEGUIDE_HPP
#define WGS_WAVEGUIDE_HPP

// Time integration of the wave-guide NLS (i d_t + d_xx - |D_y|) U = |U|^2 U:
// Strang split-step for U, an adaptive interaction-picture integrator for the
// profile F(t) = e^{-itA} U(t), the trilinear nonlinearity
//   N^t[F,G,H] = e^{-itA}( e^{itA}F conj(e^{itA}G) e^{itA}H ),
// its resonant-in-y part assembled from 1-D kernels over Gamma_0, the
// stationary-phase deficit against (pi/t) R, and the half-wave flow on T.

#include "wgs/field.hpp"
#include "wgs/norms.hpp"

namespace wgs {

struct SplitStepConfig {
    double dt = 1e-3;
    double checkpoint_dt = 1.0;
    // x dealiasing keeps |xi| <= dealias * xi_max; y products are alias-free
    // by the n_y >= 4 p_max + 2 headroom.
    double dealias = 2.0 / 3.0;
};

struct ConservationRow {
    double t = 0.0, mass = 0.0, energy = 0.0;
};

struct WaveguideRun {
    CylinderTrajectory traj;                  // snapshots of U
    std::vector<ConservationRow> conservation; // at checkpoint cadence
};

// Strang splitting: half free flow, full nonlinear phase U -> e^{-i|U|^2 dt} U
// in physical space, half free flow. Throws when t_end exceeds 0.8 t_wrap or
// the dt <= 0.1/max|U|^2 stability guard fails. Clean second-order
// step-halving behavior needs the data's cubic harmonics inside the retained
// band (3 * data band <= p_max); band-edge truncation otherwise adds a small
// first-order component.
WaveguideRun evolve_waveguide(const CylinderField& U0, double t_end, const SplitStepConfig& cfg,
                              std::vector<double> snaps = {});

// (mass, energy); energy = 1/2 Int |d_x U|^2 + |D_y|U conj U + 1/4 Int |U|^4.
std::pair<double, double> conserved_quantities(const CylinderField& U);

// F(t) = e^{-itA} U(t).
CylinderField profile_of(const CylinderField& U, double t);

// Full N^t, or its resonant part N_0^t assembled from the 1-D kernels
//   I^t[f,g,h] = U(-t)( U(t)f conj(U(t)g) U(t)h )
// summed over Gamma_0 into output mode p = q - r + s (p_max <= 16 guard).
CylinderField trilinear_N(const CylinderField& F, const CylinderField& G, const CylinderField& H,
                          double t, bool resonant_only);

// Oracle path: sum over all momentum tuples of e^{it omega} I^t, grouped by
// resonance level. Identical to the full product path up to roundoff.
CylinderField trilinear_by_levels(const CylinderField& F, const CylinderField& G,
                                  const CylinderField& H, double t);

struct DeficitSeries {
    std::vector<double> ts;
    std::vector<double> d_ys;     // |N_0^t - (pi/t) R| in Y^{1.5}
    std::vector<double> d_l2;     // same in L^2
    std::vector<double> l2_ratio; // t |N_0^t| / (pi |R|) in L^2
    double slope_ys = 0.0;        // log-log fit over ts
};

DeficitSeries stationary_phase_deficit(const CylinderField& F, const std::vector<double>& ts,
                                       const NormParams& np = {});

struct HalfwaveTrajectory {
    std::vector<double> times;
    std::vector<TorusField> states;
    double mass_drift = 0.0;   // relative
    double energy_drift = 0.0; // relative, H = 1/2 <|D|u,u> + 1/4 |u|_{L4}^4
};

// i d_t u - |D_y| u = |u|^2 u integrated in the interaction picture.
HalfwaveTrajectory halfwave_evolve(const TorusField& u0, double t_end, double tol,
                                   std::vector<double> snaps = {});

// Adaptive integration of the profile equation i d_t F = N^t[F,F,F] from t0.
CylinderTrajectory evolve_profile(const CylinderField& F0, double t0, double t1, double tol,
                                  std::vector<double> snaps);

// 2/3-rule spectral mask in x (in place, fourier_xy).
void dealias_x(CylinderField& f, double frac = 2.0 / 3.0);

} // namespace wgs

#endif
