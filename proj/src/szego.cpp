#include "wgs/szego.hpp"

#include "wgs/fft.hpp"
#include "wgs/norms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <random>

namespace wgs {

namespace {

int pad_size(int modes_needed) {
    int n = 16;
    while (n < modes_needed) n <<= 1;
    return n;
}

} // namespace

double SzegoState::mass() const {
    double s = 0.0;
    for (const cplx& z : a) s += std::norm(z);
    return s;
}

double SzegoState::momentum() const {
    double s = 0.0;
    for (int p = 0; p <= p_max(); ++p) s += p * std::norm(a[p]);
    return s;
}

double SzegoState::hamiltonian() const {
    int n = pad_size(4 * p_max() + 2);
    std::vector<cplx> buf(n, cplx{0.0, 0.0});
    std::copy(a.begin(), a.end(), buf.begin());
    fft::dft(buf.data(), n, fft::backward);
    double s = 0.0;
    for (const cplx& z : buf) {
        double m = std::norm(z);
        s += m * m;
    }
    return 0.25 * s / n;
}

double SzegoState::hs_norm(double s) const {
    double acc = 0.0;
    for (int p = 0; p <= p_max(); ++p)
        acc += std::pow(1.0 + static_cast<double>(p) * p, s) * std::norm(a[p]);
    return std::sqrt(acc);
}

std::vector<cplx> szego_cubic(const std::vector<cplx>& a, int out_pmax) {
    const int p_max = static_cast<int>(a.size()) - 1;
    const int n = pad_size(3 * p_max + out_pmax + 2);
    std::vector<cplx> buf(n, cplx{0.0, 0.0});
    std::copy(a.begin(), a.end(), buf.begin());
    fft::dft(buf.data(), n, fft::backward);
    for (cplx& z : buf) z *= std::norm(z);
    fft::dft(buf.data(), n, fft::forward);
    std::vector<cplx> out(out_pmax + 1);
    for (int p = 0; p <= out_pmax; ++p) out[p] = buf[p] / static_cast<double>(n);
    return out;
}

SzegoState szego_rhs(const SzegoState& v) {
    SzegoState out(v.p_max());
    out.time = v.time;
    out.a = szego_cubic(v.a, v.p_max());
    return out;
}

SzegoState hankel_apply(const SzegoState& v, const SzegoState& h) {
    // (H_v h)_p = sum_{q >= 0} v_{p+q} conj(h_q)
    SzegoState out(v.p_max());
    for (int p = 0; p <= v.p_max(); ++p) {
        cplx acc{0.0, 0.0};
        for (int q = 0; p + q <= v.p_max() && q <= h.p_max(); ++q)
            acc += v.a[p + q] * std::conj(h.a[q]);
        out.a[p] = acc;
    }
    return out;
}

SzegoState toeplitz_apply(const TorusField& b, const SzegoState& h) {
    // (T_b h)_p = sum_{q >= 0} b_{p-q} h_q
    SzegoState out(h.p_max());
    for (int p = 0; p <= h.p_max(); ++p) {
        cplx acc{0.0, 0.0};
        for (int q = 0; q <= h.p_max(); ++q) {
            int k = p - q;
            if (std::abs(k) <= b.p_max) acc += b.at(k) * h.a[q];
        }
        out.a[p] = acc;
    }
    return out;
}

CMat hankel_matrix(const SzegoState& v, int P) {
    CMat G = CMat::Zero(P, P);
    for (int j = 0; j < P; ++j)
        for (int k = 0; k < P; ++k)
            if (j + k <= v.p_max()) G(j, k) = v.a[j + k];
    return G;
}

CMat toeplitz_matrix(const TorusField& b, int P) {
    CMat T = CMat::Zero(P, P);
    for (int j = 0; j < P; ++j)
        for (int k = 0; k < P; ++k)
            if (std::abs(j - k) <= b.p_max) T(j, k) = b.at(j - k);
    return T;
}

SpectralData hankel_spectrum(const SzegoState& v, int P) {
    if (P < v.p_max() + 1) throw std::invalid_argument("hankel_spectrum: P < p_max+1");
    CMat G = hankel_matrix(v, P);
    SpectralData out;
    Eigen::BDCSVD<CMat> svd(G);
    out.singular.assign(svd.singularValues().data(), svd.singularValues().data() + P);
    out.trace_norm = 0.0;
    for (double s : out.singular) out.trace_norm += s;
    Eigen::SelfAdjointEigenSolver<CMat> eig(G * G.adjoint());
    if (eig.info() != Eigen::Success) throw std::runtime_error("hankel_spectrum: eigensolver failed");
    out.h2_eigs.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + P);
    std::sort(out.h2_eigs.rbegin(), out.h2_eigs.rend());
    return out;
}

double lax_residual(const SzegoState& v, int P) {
    const int p_max = v.p_max();
    if (P < 3 * p_max + 2) throw std::invalid_argument("lax_residual: insufficient padding");

    // dH_v/dt = H_w, w = -i Pi_+(|v|^2 v) kept to 3 p_max (exact band)
    SzegoState w(std::min(3 * p_max, 2 * (P - 1)));
    w.a = szego_cubic(v.a, w.p_max());
    for (cplx& z : w.a) z *= cplx{0.0, -1.0};

    CMat G = hankel_matrix(v, P);
    CMat Gw = hankel_matrix(w, P);

    // |v|^2 as a torus field (modes -p_max..p_max)
    TorusField b(p_max);
    for (int k = -p_max; k <= p_max; ++k) {
        cplx acc{0.0, 0.0};
        for (int m = 0; m <= p_max; ++m) {
            int mm = m - k;
            if (mm >= 0 && mm <= p_max) acc += v.a[m] * std::conj(v.a[mm]);
        }
        b.at(k) = acc;
    }
    CMat T = toeplitz_matrix(b, P);
    CMat B = cplx{0.0, 0.5} * (G * G.adjoint()) - cplx{0.0, 1.0} * T;

    // [B, H_v] as an antilinear operator: matrix B G - G conj(B)
    CMat comm = B * G - G * B.conjugate();
    CMat diff = Gw - comm;
    double acc = 0.0;
    for (int j = 0; j < p_max; ++j)
        for (int k = 0; k < p_max; ++k) acc += std::norm(diff(j, k));
    return std::sqrt(acc);
}

SzegoTrajectory evolve_szego(const SzegoState& v0, double t_end, double tol,
                             std::vector<double> snaps) {
    if (snaps.empty()) {
        int n_snap = 16;
        for (int i = 0; i <= n_snap; ++i) snaps.push_back(t_end * i / n_snap);
    }
    std::sort(snaps.begin(), snaps.end());
    SzegoTrajectory traj;
    std::vector<cplx> y = v0.a;
    std::vector<cplx> work;
    auto rhs = [&](double, const std::vector<cplx>& state, std::vector<cplx>& dy) {
        work = szego_cubic(state, static_cast<int>(state.size()) - 1);
        for (std::size_t i = 0; i < dy.size(); ++i) dy[i] = cplx{0.0, -1.0} * work[i];
    };
    OdeOptions opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    ode_integrate(rhs, y, v0.time, v0.time + t_end, opt, snaps,
                  [&](double t, const std::vector<cplx>& state) {
                      SzegoState s(v0.p_max());
                      s.a = state;
                      s.time = t;
                      traj.times.push_back(t);
                      traj.states.push_back(std::move(s));
                  });
    return traj;
}

SzegoDrift szego_invariant_drift(const SzegoTrajectory& traj) {
    SzegoDrift d;
    if (traj.states.empty()) return d;
    const SzegoState& s0 = traj.states.front();
    double m0 = s0.mass(), p0 = s0.momentum(), h0 = s0.hamiltonian();
    int P = s0.p_max() + 1;
    auto sv0 = hankel_spectrum(s0, P).singular;
    for (const SzegoState& s : traj.states) {
        d.mass = std::max(d.mass, std::fabs(s.mass() - m0) / std::max(m0, 1e-300));
        d.momentum = std::max(d.momentum, std::fabs(s.momentum() - p0) / std::max(p0, 1e-300));
        d.hamiltonian =
            std::max(d.hamiltonian, std::fabs(s.hamiltonian() - h0) / std::max(h0, 1e-300));
        auto sv = hankel_spectrum(s, P).singular;
        for (std::size_t i = 0; i < sv.size(); ++i)
            d.singular_values = std::max(d.singular_values, std::fabs(sv[i] - sv0[i]));
    }
    return d;
}

Band peller_ratio(int p_max, int trials, unsigned seed) {
    if (trials < 1) throw std::invalid_argument("peller_ratio: trials < 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Band band;
    for (int t = 0; t < trials; ++t) {
        SzegoState v(p_max);
        for (cplx& z : v.a) z = cplx{gauss(rng), gauss(rng)};
        TorusField tf(p_max);
        for (int p = 0; p <= p_max; ++p) tf.at(p) = v.a[p];
        double b1 = torus_norm(tf, TorusWhich::B1);
        double tr = hankel_spectrum(v, p_max + 1).trace_norm;
        if (tr > 0.0) band.add(b1 / tr);
    }
    return band;
}

CascadeScan cascade_scan(const std::vector<double>& eps_list, double s, double t_max_factor,
                         double tol, int p_max) {
    // s = 1/2 is allowed as a null control (bounded by mass + momentum)
    if (s < 0.5) throw std::invalid_argument("cascade_scan: s below 1/2");
    CascadeScan out;
    for (double eps : eps_list) {
        int pm = p_max;
        if (pm == 0) {
            pm = 128;
            if (eps > 0.0) pm = std::max(128, static_cast<int>(std::ceil(6.0 / (eps * eps))));
            pm = std::min(pm, 2048);
        }
        SzegoState v0(pm);
        v0.a[1] = 1.0;
        v0.a[0] = eps;
        double t_max = eps > 0.0 ? t_max_factor / eps : t_max_factor;
        std::vector<double> snaps;
        int n_snap = 400;
        for (int i = 0; i <= n_snap; ++i) snaps.push_back(t_max * i / n_snap);
        auto traj = evolve_szego(v0, t_max, tol, snaps);
        CascadeRow row;
        row.eps = eps;
        std::size_t best = 0;
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            double h = traj.states[i].hs_norm(s);
            if (h > row.sup_hs) {
                row.sup_hs = h;
                row.arg_sup = traj.times[i];
                best = i;
            }
        }
        const auto& peak = traj.states[best];
        double tail = 0.0, total = 0.0;
        for (int p = 0; p <= peak.p_max(); ++p) {
            double m = std::norm(peak.a[p]);
            total += m;
            if (p > (7 * peak.p_max()) / 8) tail += m;
        }
        row.tail_fraction = total > 0.0 ? tail / total : 0.0;
        out.rows.push_back(row);
    }
    // log-log fit of sup against eps
    if (out.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (const auto& r : out.rows) {
            if (r.eps <= 0.0 || r.sup_hs <= 0.0) continue;
            double x = std::log(r.eps), y = std::log(r.sup_hs);
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
