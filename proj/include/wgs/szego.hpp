#ifndef WGS_SZEGO_HPP
#define WGS_SZEGO_HPP

// The cubic Szego equation i dv/dt = Pi_+(|v|^2 v) on its integrable side:
// Hankel/Toeplitz operators, the Lax pair B_v = (i/2)H_v^2 - i T_{|v|^2},
// isospectral invariants, the Peller trace-norm band, and cascade scans.
//
// H_v is antilinear: h -> Gamma conj(h) with Gamma_{jk} = v_{j+k} symmetric.
// All operator identities are evaluated as (matrix, conjugation) pairs so the
// antilinearity is never silently dropped.

#include "wgs/field.hpp"
#include "wgs/ode.hpp"

#include <Eigen/Dense>

namespace wgs {

struct SzegoState {
    std::vector<cplx> a; // modes 0..p_max
    double time = 0.0;

    SzegoState() = default;
    explicit SzegoState(int p_max) : a(p_max + 1) {}
    int p_max() const { return static_cast<int>(a.size()) - 1; }
    double mass() const;        // sum |a_p|^2
    double momentum() const;    // sum p |a_p|^2
    double hamiltonian() const; // (1/4) |v|_{L^4}^4, normalized measure
    double hs_norm(double s) const;
};

// Pi_+(|v|^2 v) truncated to the state band; the cubic product is computed on
// a zero-padded grid (>= 4 p_max + 2 points) and is exact there.
SzegoState szego_rhs(const SzegoState& v);
// Same product kept up to out_pmax modes (for Lax-pair padding).
std::vector<cplx> szego_cubic(const std::vector<cplx>& a, int out_pmax);

// H_v h = Pi_+(v conj h), T_b h = Pi_+(b h); spectral-convolution realization.
SzegoState hankel_apply(const SzegoState& v, const SzegoState& h);
SzegoState toeplitz_apply(const TorusField& b, const SzegoState& h);

using CMat = Eigen::MatrixXcd;

// Gamma_{jk} = v_{j+k}, order P (entries beyond p_max are zero).
CMat hankel_matrix(const SzegoState& v, int P);
// (T_b)_{jk} = b_{j-k}, order P.
CMat toeplitz_matrix(const TorusField& b, int P);

struct SpectralData {
    std::vector<double> singular; // descending
    double trace_norm = 0.0;
    std::vector<double> h2_eigs; // eigenvalues of H_v^2 = Gamma Gamma^H, descending
};

// Requires P >= p_max + 1.
SpectralData hankel_spectrum(const SzegoState& v, int P);

// Frobenius norm of dH_v/dt - [B_v, H_v] restricted to the band p,q < p_max,
// with dH_v/dt realized as H_w, w = -i Pi_+(|v|^2 v). Requires P >= 3 p_max + 2.
double lax_residual(const SzegoState& v, int P);

struct SzegoTrajectory {
    std::vector<double> times;
    std::vector<SzegoState> states;
};

struct SzegoDrift {
    double mass = 0.0, momentum = 0.0, hamiltonian = 0.0; // relative drifts
    double singular_values = 0.0;                         // max abs drift
};

SzegoTrajectory evolve_szego(const SzegoState& v0, double t_end, double tol,
                             std::vector<double> snaps = {});
SzegoDrift szego_invariant_drift(const SzegoTrajectory& traj);

struct Band {
    double lo = 1e300, hi = 0.0;
    void add(double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    double ratio() const { return lo > 0.0 ? hi / lo : 1e300; }
};

// Band of |v|_{B1} / Tr|H_v| over a random band-limited family. trials >= 1.
Band peller_ratio(int p_max, int trials, unsigned seed);

struct CascadeRow {
    double eps = 0.0;
    double sup_hs = 0.0;
    double arg_sup = 0.0;
    double tail_fraction = 0.0; // spectral tail mass at the arg-sup, health check
};

struct CascadeScan {
    std::vector<CascadeRow> rows;
    double fitted_exponent = 0.0; // slope of log sup vs log eps
};

// Family v0(eps) = e^{iy} + eps, t_max(eps) = t_max_factor/eps. s > 1/2.
CascadeScan cascade_scan(const std::vector<double>& eps_list, double s,
                         double t_max_factor = 4.0 * M_PI, double tol = 1e-9, int p_max = 0);

} // namespace wgs

#endif
