#ifndef WGS_NORMS_HPP
#define WGS_NORMS_HPP

// Discrete implementations of the norm family: h^s_p and B^1_{1,1} on the
// torus; Y^s, Z, S, S^+, H^s and L^2_x H^s_y on the cylinder; the space-time
// aggregate X_T. Torus Lebesgue norms use the normalized measure dy/2pi, so a
// single mode e^{ipy} has unit L^1/L^2 norm. Cylinder norms use dx dy.

#include "wgs/field.hpp"

#include <map>
#include <string>

namespace wgs {

struct NormParams {
    double s = 0.75;     // torus Sobolev exponent where one is needed
    int sobolev_N = 4;   // Sobolev index of the S norm (desk default)
    double delta = 1e-3; // time weight exponent in X_T
};

enum class TorusWhich { hs_p, B1, L1, L2 };
enum class CylWhich { Ys, Z, S, S_plus, L2xHs_y, Hs, L2 };

// Quadrature size used for torus L^1 evaluations (deterministic given p_max).
int torus_quadrature_points(int p_max);

double torus_norm(const TorusField& v, TorusWhich which, double s = 0.0);
double cylinder_norm(const CylinderField& F, CylWhich which, const NormParams& np = {});

struct NormReport {
    std::map<std::string, double> values;
    double s = 0.0;
    int sobolev_N = 0;
    std::string grid_stamp;
};

NormReport norm_report(const CylinderField& F, const NormParams& np);

// sup over stored times of max(Z, (1+t)^{-d} S, (1+t)^{1-3d} |dF/dt|_S), with
// the S+ terms added when plus is set. Time derivatives are centered
// differences at the stored cadence. Requires at least two snapshots.
double xt_norm(const CylinderTrajectory& traj, double T, double delta, bool plus,
               const NormParams& np = {});

struct HierarchyReport {
    // empirical maxima of the hierarchy ratios over the sampled family
    double y_half_over_z = 0.0;
    double z_over_y_s = 0.0; // s = 1.5
    double h_half_over_z = 0.0;
    double z_over_s = 0.0;
    double z_over_interp = 0.0; // Z / (L2^{1/4} S^{3/4})
};

HierarchyReport hierarchy_audit(GridPtr g, int trials, unsigned seed, const NormParams& np = {});

} // namespace wgs

#endif
