#ifndef WGS_BUMP_HPP
#define WGS_BUMP_HPP

// The smooth cutoff underlying every Littlewood-Paley multiplier: phibar = 1
// on |x| <= 1, 0 on |x| >= 2, glued with exp(-1/x). The shell function is
// phi(x) = phibar(x) - phibar(2x).

#include <cmath>

namespace wgs {

inline double bump_glue(double u) {
    // 0 for u <= 0, 1 for u >= 1, smooth monotone in between
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double a = std::exp(-1.0 / u);
    double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

inline double phibar(double x) {
    double ax = std::fabs(x);
    if (ax <= 1.0) return 1.0;
    if (ax >= 2.0) return 0.0;
    return 1.0 - bump_glue(ax - 1.0);
}

inline double lp_shell(double x) { return phibar(x) - phibar(2.0 * x); }

} // namespace wgs

#endif
