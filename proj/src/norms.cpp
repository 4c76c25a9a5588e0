#include "wgs/norms.hpp"

#include "wgs/bump.hpp"
#include "wgs/fft.hpp"
#include "wgs/simd.hpp"

#include <algorithm>
#include <sstream>

namespace wgs {

int torus_quadrature_points(int p_max) {
    int want = 8 * (2 * p_max + 1);
    int n = 64;
    while (n < want) n <<= 1;
    return n;
}

namespace {

double torus_l1(const TorusField& v, int n_quad) {
    auto vals = v.values(n_quad);
    double s = 0.0;
    for (const cplx& z : vals) s += std::abs(z);
    return s / n_quad;
}

double torus_b1(const TorusField& v, int n_quad) {
    TorusField part(v.p_max);
    // S0 block
    for (int p = -v.p_max; p <= v.p_max; ++p) part.at(p) = v.at(p) * s0_multiplier(p);
    double b1 = torus_l1(part, n_quad);
    for (double N : dyadic_blocks(v.p_max)) {
        bool nonzero = false;
        for (int p = -v.p_max; p <= v.p_max; ++p) {
            double m = delta_multiplier(p, N);
            part.at(p) = v.at(p) * m;
            nonzero |= (m != 0.0 && v.at(p) != cplx{0.0, 0.0});
        }
        if (nonzero) b1 += N * torus_l1(part, n_quad);
    }
    return b1;
}

} // namespace

double torus_norm(const TorusField& v, TorusWhich which, double s) {
    switch (which) {
    case TorusWhich::hs_p: {
        double acc = 0.0;
        for (int p = -v.p_max; p <= v.p_max; ++p)
            acc += std::pow(1.0 + static_cast<double>(p) * p, s) * std::norm(v.at(p));
        return std::sqrt(acc);
    }
    case TorusWhich::L2: {
        double acc = 0.0;
        for (const cplx& z : v.c) acc += std::norm(z);
        return std::sqrt(acc);
    }
    case TorusWhich::L1: return torus_l1(v, torus_quadrature_points(v.p_max));
    case TorusWhich::B1: return torus_b1(v, torus_quadrature_points(v.p_max));
    }
    return 0.0;
}

namespace {

double hs_norm(const CylinderField& Fxy, double s) {
    const auto& g = Fxy.grid();
    double acc = 0.0;
    for (int p = -g.p_max; p <= g.p_max; ++p) {
        const cplx* row = Fxy.mode(p);
        for (int k = 0; k < g.n_x; ++k) {
            double w = std::pow(1.0 + g.xi(k) * g.xi(k) + static_cast<double>(p) * p, s);
            acc += w * std::norm(row[k]);
        }
    }
    return std::sqrt(4.0 * M_PI * M_PI * g.dxi() * acc);
}

double l2xhs_norm(const CylinderField& Fxy, double s) {
    const auto& g = Fxy.grid();
    double acc = 0.0;
    for (int p = -g.p_max; p <= g.p_max; ++p) {
        double w = std::pow(1.0 + static_cast<double>(p) * p, s);
        acc += w * simd::sumsq(Fxy.mode(p), g.n_x);
    }
    return std::sqrt(4.0 * M_PI * M_PI * g.dxi() * acc);
}

double ys_norm(const CylinderField& Fxy, double s) {
    const auto& g = Fxy.grid();
    double best = 0.0;
    for (int k = 0; k < g.n_x; ++k) {
        double acc = 0.0;
        for (int p = -g.p_max; p <= g.p_max; ++p)
            acc += std::pow(1.0 + static_cast<double>(p) * p, s) * std::norm(Fxy.mode(p)[k]);
        double xi = g.xi(k);
        best = std::max(best, (1.0 + xi * xi) * std::sqrt(acc));
    }
    return best;
}

double z_norm(const CylinderField& Fxy) {
    const auto& g = Fxy.grid();
    int n_quad = torus_quadrature_points(g.p_max);
    double best = 0.0;
    for (int k = 0; k < g.n_x; ++k) {
        TorusField slice = Fxy.slice(k);
        double xi = g.xi(k);
        best = std::max(best, (1.0 + xi * xi) * torus_b1(slice, n_quad));
    }
    return best;
}

double s_norm(const CylinderField& Fxy, int N) {
    return hs_norm(Fxy, N) + l2_norm(multiply_by_x(Fxy));
}

CylinderField one_minus_dxx_pow4(const CylinderField& Fxy) {
    const auto& g = Fxy.grid();
    CylinderField out = Fxy;
    for (int r = 0; r < out.rows(); ++r) {
        cplx* row = out.row(r);
        for (int k = 0; k < g.n_x; ++k) {
            double w = 1.0 + g.xi(k) * g.xi(k);
            row[k] *= w * w * w * w;
        }
    }
    return out;
}

} // namespace

double cylinder_norm(const CylinderField& F, CylWhich which, const NormParams& np) {
    CylinderField Fxy = F.rep() == Rep::fourier_xy ? F : transform(F, Rep::fourier_xy);
    switch (which) {
    case CylWhich::Ys: return ys_norm(Fxy, np.s);
    case CylWhich::Z: return z_norm(Fxy);
    case CylWhich::Hs: return hs_norm(Fxy, np.s);
    case CylWhich::L2xHs_y: return l2xhs_norm(Fxy, np.s);
    case CylWhich::L2: return l2_norm(Fxy);
    case CylWhich::S: return s_norm(Fxy, np.sobolev_N);
    case CylWhich::S_plus: {
        double base = s_norm(Fxy, np.sobolev_N);
        base += s_norm(one_minus_dxx_pow4(Fxy), np.sobolev_N);
        base += s_norm(multiply_by_x(Fxy), np.sobolev_N);
        return base;
    }
    }
    return 0.0;
}

NormReport norm_report(const CylinderField& F, const NormParams& np) {
    NormReport r;
    r.s = np.s;
    r.sobolev_N = np.sobolev_N;
    std::ostringstream os;
    os << "L=" << F.grid().L << ",n_x=" << F.grid().n_x << ",p_max=" << F.grid().p_max;
    r.grid_stamp = os.str();
    r.values["L2"] = cylinder_norm(F, CylWhich::L2, np);
    r.values["Hs"] = cylinder_norm(F, CylWhich::Hs, np);
    r.values["Ys"] = cylinder_norm(F, CylWhich::Ys, np);
    r.values["Z"] = cylinder_norm(F, CylWhich::Z, np);
    r.values["S"] = cylinder_norm(F, CylWhich::S, np);
    r.values["S_plus"] = cylinder_norm(F, CylWhich::S_plus, np);
    r.values["L2xHs_y"] = cylinder_norm(F, CylWhich::L2xHs_y, np);
    return r;
}

double xt_norm(const CylinderTrajectory& traj, double T, double delta, bool plus,
               const NormParams& np) {
    if (traj.times.size() < 2) throw std::invalid_argument("xt_norm: need at least 2 snapshots");
    const std::size_t n = traj.times.size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = traj.times[i];
        if (t > T) continue;
        // centered difference (one-sided at the ends)
        std::size_t lo = i == 0 ? 0 : i - 1;
        std::size_t hi = i + 1 == n ? i : i + 1;
        double dt = traj.times[hi] - traj.times[lo];
        CylinderField dF = traj.states[hi];
        const auto& lo_state = traj.states[lo];
        for (std::size_t j = 0; j < dF.data().size(); ++j)
            dF.data()[j] = (dF.data()[j] - lo_state.data()[j]) / dt;

        double w = 1.0 + std::fabs(t);
        double term = cylinder_norm(traj.states[i], CylWhich::Z, np);
        term = std::max(term, std::pow(w, -delta) * cylinder_norm(traj.states[i], CylWhich::S, np));
        term = std::max(term, std::pow(w, 1.0 - 3.0 * delta) * cylinder_norm(dF, CylWhich::S, np));
        if (plus) {
            term = std::max(term, std::pow(w, -5.0 * delta) *
                                      cylinder_norm(traj.states[i], CylWhich::S_plus, np));
            term = std::max(term,
                            std::pow(w, 1.0 - 7.0 * delta) * cylinder_norm(dF, CylWhich::S_plus, np));
        }
        best = std::max(best, term);
    }
    return best;
}

HierarchyReport hierarchy_audit(GridPtr g, int trials, unsigned seed, const NormParams& np) {
    if (trials < 1) throw std::invalid_argument("hierarchy_audit: trials < 1");
    HierarchyReport rep;
    NormParams half = np, s15 = np;
    half.s = 0.5;
    s15.s = 1.5;
    for (int trial = 0; trial < trials; ++trial) {
        CylinderField F = random_field(g, seed + 977u * trial, 0.5 * g->xi_max(), g->p_max);
        double l2 = cylinder_norm(F, CylWhich::L2, np);
        if (l2 == 0.0) continue;
        double y_half = cylinder_norm(F, CylWhich::Ys, half);
        double y_15 = cylinder_norm(F, CylWhich::Ys, s15);
        double z = cylinder_norm(F, CylWhich::Z, np);
        double h_half = cylinder_norm(F, CylWhich::Hs, half);
        double s = cylinder_norm(F, CylWhich::S, np);
        rep.y_half_over_z = std::max(rep.y_half_over_z, y_half / z);
        rep.z_over_y_s = std::max(rep.z_over_y_s, z / y_15);
        rep.h_half_over_z = std::max(rep.h_half_over_z, h_half / z);
        rep.z_over_s = std::max(rep.z_over_s, z / s);
        rep.z_over_interp = std::max(rep.z_over_interp, z / (std::pow(l2, 0.25) * std::pow(s, 0.75)));
    }
    return rep;
}

} // namespace wgs
