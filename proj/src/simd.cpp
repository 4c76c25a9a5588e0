#include "wgs/simd.hpp"

#include <atomic>

namespace wgs::simd {

namespace {

void s_cmul(cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void s_cmul_conj(cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= std::conj(b[i]);
}

void s_cmul3_acc(cplx* out, const cplx* f, const cplx* g, const cplx* h, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += f[i] * std::conj(g[i]) * h[i];
}

void s_caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double s_sumsq(const cplx* z, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
    return s;
}

double s_wsumsq(const double* w, const cplx* z, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * (z[i].real() * z[i].real() + z[i].imag() * z[i].imag());
    return s;
}

void s_abs2(double* out, const cplx* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

std::atomic<bool> g_force_scalar{false};

const Kernels* detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2")) return &avx2;
#endif
#if defined(__aarch64__)
    return &neon;
#endif
    return &scalar;
}

} // namespace

const Kernels scalar{s_cmul, s_cmul_conj, s_cmul3_acc, s_caxpy, s_sumsq, s_wsumsq, s_abs2};

const Kernels& active() {
    static const Kernels* best = detect();
    return g_force_scalar.load(std::memory_order_relaxed) ? scalar : *best;
}

const char* active_name() {
    const Kernels* k = &active();
    if (k == &scalar) return "scalar";
#if defined(__x86_64__) || defined(_M_X64)
    if (k == &avx2) return "avx2";
#endif
#if defined(__aarch64__)
    if (k == &neon) return "neon";
#endif
    return "scalar";
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

} // namespace wgs::simd
