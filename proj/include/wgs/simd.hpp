#ifndef WGS_SIMD_HPP
#define WGS_SIMD_HPP

// Pointwise complex kernels for the spectral inner loops. Each kernel has a
// scalar reference implementation and an AVX2 variant (NEON on aarch64); the
// active variant is chosen once at startup from CPU capabilities. Dispatch can
// be overridden with force_scalar() so the two paths can be equivalence-tested.

#include <complex>
#include <cstddef>

namespace wgs::simd {

using cplx = std::complex<double>;

struct Kernels {
    // a[i] *= b[i]
    void (*cmul)(cplx* a, const cplx* b, std::size_t n);
    // a[i] *= conj(b[i])
    void (*cmul_conj)(cplx* a, const cplx* b, std::size_t n);
    // out[i] += f[i] * conj(g[i]) * h[i]
    void (*cmul3_acc)(cplx* out, const cplx* f, const cplx* g, const cplx* h, std::size_t n);
    // y[i] += a * x[i]
    void (*caxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
    // sum |z[i]|^2
    double (*sumsq)(const cplx* z, std::size_t n);
    // sum w[i] |z[i]|^2
    double (*wsumsq)(const double* w, const cplx* z, std::size_t n);
    // out[i] = |z[i]|^2
    void (*abs2)(double* out, const cplx* z, std::size_t n);
};

extern const Kernels scalar;   // reference path
#if defined(__x86_64__) || defined(_M_X64)
extern const Kernels avx2;
#endif
#if defined(__aarch64__)
extern const Kernels neon;
#endif

// Active kernel table (runtime-dispatched).
const Kernels& active();
// Name of the active variant ("scalar", "avx2", "neon").
const char* active_name();
// Pin the scalar path (used by equivalence tests and --no-simd).
void force_scalar(bool on);

inline void cmul(cplx* a, const cplx* b, std::size_t n) { active().cmul(a, b, n); }
inline void cmul_conj(cplx* a, const cplx* b, std::size_t n) { active().cmul_conj(a, b, n); }
inline void cmul3_acc(cplx* o, const cplx* f, const cplx* g, const cplx* h, std::size_t n) {
    active().cmul3_acc(o, f, g, h, n);
}
inline void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) { active().caxpy(a, x, y, n); }
inline double sumsq(const cplx* z, std::size_t n) { return active().sumsq(z, n); }
inline double wsumsq(const double* w, const cplx* z, std::size_t n) { return active().wsumsq(w, z, n); }
inline void abs2(double* out, const cplx* z, std::size_t n) { active().abs2(out, z, n); }

} // namespace wgs::simd

#endif
