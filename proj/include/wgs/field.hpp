#ifndef WGS_FIELD_HPP
#define WGS_FIELD_HPP

// Grids and complex fields on the truncated cylinder [-L/2,L/2) x T.
//
// Transform conventions, used consistently everywhere:
//
//   line (x):   fhat(xi)  = Int e^{-i x xi} f(x) dx          [continuum scaling]
//   torus (y):  h_p       = (1/2pi) Int_T e^{-i p y} h(y) dy  [series coefficients]
//
// A field's spectral representation stores inverse-transform *densities*
//
//   A_p(xi) = (1/2pi) fhat_p(xi),   F(x,y) = sum_p e^{ipy} Int e^{i x xi} A_p(xi) dxi,
//
// so that pointwise products of fields become plain convolutions in both
// variables with no 2pi factors. Under this scaling the Gamma_0 sum of the
// resonant operator and the pi/t stationary-phase constant of the oscillatory
// kernel come out clean; see resonance.hpp and waveguide.hpp.
//
// Discretely, with x_j = -L/2 + j dx and xi_k = 2pi k / L (FFT index order),
//
//   A(xi_k) = (dx/2pi) sum_j e^{-i x_j xi_k} f(x_j),   f(x_j) = dxi sum_k e^{i x_j xi_k} A(xi_k).

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace wgs {

using cplx = std::complex<double>;

struct CylinderGrid {
    double L = 0.0; // box length in x
    int n_x = 0;    // x grid points (power of two)
    int p_max = 0;  // largest retained torus mode
    int n_y = 0;    // y quadrature points, >= 4*p_max + 2

    double dx() const { return L / n_x; }
    double dxi() const { return 2.0 * M_PI / L; }
    double xi_max() const { return 0.5 * n_x * dxi(); }
    // Horizon beyond which periodic wrap-around falsifies line dispersion.
    double t_wrap() const { return L / (2.0 * xi_max()); }
    double x(int j) const { return -0.5 * L + j * dx(); }
    double xi(int k) const { return dxi() * (k < n_x / 2 ? k : k - n_x); }
    double y(int m) const { return 2.0 * M_PI * m / n_y; }
    int n_modes() const { return 2 * p_max + 1; }
};

using GridPtr = std::shared_ptr<const CylinderGrid>;

// Throws std::invalid_argument unless n_x is a power of two, p_max >= 1, L > 0.
// n_y defaults to the smallest power of two >= 4*p_max + 2.
GridPtr build_grid(double L, int n_x, int p_max, int n_y = 0);

struct TorusField {
    int p_max = 0;
    std::vector<cplx> c; // index ip = p + p_max

    TorusField() = default;
    explicit TorusField(int pmax) : p_max(pmax), c(2 * pmax + 1) {}
    cplx& at(int p) { return c[p + p_max]; }
    cplx at(int p) const { return c[p + p_max]; }
    // v(y_m) on an n-point uniform y grid (n >= 2*p_max+1)
    std::vector<cplx> values(int n) const;
    static TorusField from_values(std::span<const cplx> vals, int p_max);
};

enum class Rep { physical, fourier_x, fourier_xy };

class CylinderField {
  public:
    CylinderField() = default;
    CylinderField(GridPtr g, Rep r);

    const CylinderGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    Rep rep() const { return rep_; }
    int rows() const { return rep_ == Rep::fourier_xy ? grid_->n_modes() : grid_->n_y; }
    int cols() const { return grid_->n_x; }

    cplx* row(int r) { return data_.data() + static_cast<std::size_t>(r) * grid_->n_x; }
    const cplx* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * grid_->n_x; }
    // fourier_xy row of torus mode p
    cplx* mode(int p) { return row(p + grid_->p_max); }
    const cplx* mode(int p) const { return row(p + grid_->p_max); }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    // torus slice at xi column k (fourier_xy only)
    TorusField slice(int k) const;

  private:
    GridPtr grid_;
    Rep rep_ = Rep::physical;
    std::vector<cplx> data_;
};

struct CylinderTrajectory {
    std::vector<double> times;
    std::vector<CylinderField> states;
};

// Representation changes (round trips are identity for band-limited fields;
// physical -> fourier_xy truncates y content above p_max by construction).
CylinderField transform(const CylinderField& f, Rep target);

// e^{itA} with A = d_xx - |D_y|: multiplies mode (xi,p) by e^{-it(xi^2+|p|)}.
// Requires fourier_xy.
CylinderField free_evolve(const CylinderField& f, double t);

enum class Proj { pi_plus, pi_minus, p_shell, q_shell, delta_shell, s0 };

// pi_plus keeps p >= 0 (p > 0 when strict_plus), pi_minus the complement;
// q_shell multiplies by phi(xi/N); p_shell is P_{<=N} - P_{<=N/2} in both
// variables; delta_shell/s0 act on p only. N must be a power of two where used.
CylinderField project(const CylinderField& f, Proj kind, double N = 0.0, bool strict_plus = false);

// Torus-side dyadic family (exact partition: s0 + sum_{N>=1} delta_N = 1).
double s0_multiplier(double p);
double delta_multiplier(double p, double N);
std::vector<double> dyadic_blocks(int p_max); // N = 1,2,4,... covering p_max

// Pointwise multiplication by the box coordinate (physical representation; other
// representations are routed through physical). If edge_mass is non-null it
// receives the mass fraction within 10% of the box edge; a fraction above 1e-8
// marks x-weighted norms unreliable.
CylinderField multiply_by_x(const CylinderField& f, double* edge_mass = nullptr);
double edge_mass_fraction(const CylinderField& f);

// L2(R x T, dx dy) norm, any representation.
double l2_norm(const CylinderField& f);
double sup_abs(const CylinderField& f);

// Fraction of squared mass on even torus modes (fourier_xy).
double even_mode_fraction(const CylinderField& f);

// Line-profile transforms in the continuum convention fhat(xi)=Int e^{-ix xi}f dx
// (FFT index order for xi).
std::vector<cplx> line_fourier(const CylinderGrid& g, std::span<const cplx> f);
std::vector<cplx> line_inverse(const CylinderGrid& g, std::span<const cplx> fhat);

// Separable spectral data A_p(xi) = xi_profile(xi) * modes[p].
CylinderField make_separable(GridPtr g, const std::vector<std::pair<int, cplx>>& modes,
                             const std::function<double(double)>& xi_profile);

// Deterministic random band-limited field: Gaussian amplitudes under a smooth
// compact xi envelope (|xi| <= xi_band) on modes |p| <= band_p.
CylinderField random_field(GridPtr g, unsigned seed, double xi_band, int band_p,
                           bool odd_only = false);

} // namespace wgs

#endif
