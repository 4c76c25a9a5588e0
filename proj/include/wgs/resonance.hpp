#ifndef WGS_RESONANCE_HPP
#define WGS_RESONANCE_HPP

// Momentum / resonance level-set combinatorics and the resonant trilinear
// operator R. For the retained band,
//
//   (R[F,G,H])_p(xi) = sum_{(p,q,r,s) in Gamma_0, momentum 0} A^F_q(xi) conj(A^G_r(xi)) A^H_s(xi),
//
// pointwise in xi (the xi dependence is parametric). With the spectral density
// convention of field.hpp this sum carries no 2pi factors.

#include "wgs/field.hpp"

#include <array>

namespace wgs {

struct ModeTuple {
    int p0 = 0, p1 = 0, p2 = 0, p3 = 0;
    int momentum() const { return p0 - p1 + p2 - p3; }
    int level() const { return std::abs(p0) - std::abs(p1) + std::abs(p2) - std::abs(p3); }
    auto operator<=>(const ModeTuple&) const = default;
};

struct ResonanceClass {
    bool all_nonneg = false;
    bool all_nonpos = false;
    bool pair_0123 = false; // p0 = p1 and p2 = p3
    bool pair_0321 = false; // p0 = p3 and p2 = p1
    bool any() const { return all_nonneg || all_nonpos || pair_0123 || pair_0321; }
};

// All tuples in M cap Gamma_omega with |p_i| <= p_max, lexicographic order.
// odd_only restricts every entry to odd integers. p_max <= 64.
std::vector<ModeTuple> enumerate_level_set(int omega, int p_max, bool odd_only);

// Throws std::invalid_argument when t is not in M (momentum != 0).
ResonanceClass classify_tuple(const ModeTuple& t);

enum class RVariant { full, plus, minus };

// Precomputed tuple table for a band; entries are (p,q,r,s) with output p.
const std::vector<std::array<int, 4>>& resonant_tuples(int p_max, RVariant v);

CylinderField resonant_trilinear(const CylinderField& F, const CylinderField& G,
                                 const CylinderField& H, RVariant variant);

// sup_xi of the l^2_p residual of the odd-mode decoupling identity
//   R_full[G] = R_+[G_+] + R_-[G_-] + 2 m_-(xi) G_+ + 2 m_+(xi) G_-,
// with m_{+/-}(xi) the xi-local sector masses. Throws when even-mode content
// exceeds 1e-14 of the field's mass (amplitude-relative).
double decoupling_residual(const CylinderField& G);

// Largest slice l2 norm, the natural scale for the residual bound.
double max_slice_l2(const CylinderField& G);

} // namespace wgs

#endif
