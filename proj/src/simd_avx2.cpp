#include "wgs/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace wgs::simd {

namespace {

// Interleaved (re,im) layout: one __m256d holds two complex doubles.
// Product (a*b): re = ar*br - ai*bi, im = ar*bi + ai*br, via the usual
// movedup / permute / addsub sequence.

inline __m256d cmul_pd(__m256d a, __m256d b) {
    __m256d t1 = _mm256_mul_pd(a, _mm256_movedup_pd(b));         // (ar*br, ai*br)
    __m256d aswap = _mm256_permute_pd(a, 0x5);                   // (ai, ar)
    __m256d t2 = _mm256_mul_pd(aswap, _mm256_permute_pd(b, 0xF)); // (ai*bi, ar*bi)
    return _mm256_addsub_pd(t1, t2);
}

inline __m256d conj_pd(__m256d a) {
    const __m256d mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    return _mm256_xor_pd(a, mask);
}

void v_cmul(cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    auto* pa = reinterpret_cast<double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(pa + 2 * i, cmul_pd(va, vb));
    }
    for (; i < n; ++i) a[i] *= b[i];
}

void v_cmul_conj(cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    auto* pa = reinterpret_cast<double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = conj_pd(_mm256_loadu_pd(pb + 2 * i));
        _mm256_storeu_pd(pa + 2 * i, cmul_pd(va, vb));
    }
    for (; i < n; ++i) a[i] *= std::conj(b[i]);
}

void v_cmul3_acc(cplx* out, const cplx* f, const cplx* g, const cplx* h, std::size_t n) {
    std::size_t i = 0;
    auto* po = reinterpret_cast<double*>(out);
    const auto* pf = reinterpret_cast<const double*>(f);
    const auto* pg = reinterpret_cast<const double*>(g);
    const auto* ph = reinterpret_cast<const double*>(h);
    for (; i + 2 <= n; i += 2) {
        __m256d vf = _mm256_loadu_pd(pf + 2 * i);
        __m256d vg = conj_pd(_mm256_loadu_pd(pg + 2 * i));
        __m256d vh = _mm256_loadu_pd(ph + 2 * i);
        __m256d vo = _mm256_loadu_pd(po + 2 * i);
        vo = _mm256_add_pd(vo, cmul_pd(cmul_pd(vf, vg), vh));
        _mm256_storeu_pd(po + 2 * i, vo);
    }
    for (; i < n; ++i) out[i] += f[i] * std::conj(g[i]) * h[i];
}

void v_caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    std::size_t i = 0;
    const __m256d va = _mm256_set_pd(a.imag(), a.real(), a.imag(), a.real());
    auto* py = reinterpret_cast<double*>(y);
    const auto* px = reinterpret_cast<const double*>(x);
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vy = _mm256_loadu_pd(py + 2 * i);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul_pd(vx, va)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double v_sumsq(const cplx* z, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    const auto* pz = reinterpret_cast<const double*>(z);
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pz + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, acc);
    double s = tmp[0] + tmp[1] + tmp[2] + tmp[3];
    for (; i < n; ++i) s += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
    return s;
}

double v_wsumsq(const double* w, const cplx* z, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    const auto* pz = reinterpret_cast<const double*>(z);
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pz + 2 * i);
        __m128d wv = _mm_loadu_pd(w + i);
        // duplicate each weight over (re,im)
        __m256d vw = _mm256_set_m128d(_mm_unpackhi_pd(wv, wv), _mm_unpacklo_pd(wv, wv));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vw, _mm256_mul_pd(v, v)));
    }
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, acc);
    double s = tmp[0] + tmp[1] + tmp[2] + tmp[3];
    for (; i < n; ++i) s += w[i] * (z[i].real() * z[i].real() + z[i].imag() * z[i].imag());
    return s;
}

void v_abs2(double* out, const cplx* z, std::size_t n) {
    std::size_t i = 0;
    const auto* pz = reinterpret_cast<const double*>(z);
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pz + 2 * i);
        __m256d sq = _mm256_mul_pd(v, v);
        __m256d sw = _mm256_permute_pd(sq, 0x5);
        __m256d sum = _mm256_add_pd(sq, sw);            // (|z0|^2,|z0|^2,|z1|^2,|z1|^2)
        __m128d lo = _mm256_castpd256_pd128(sum);
        __m128d hi = _mm256_extractf128_pd(sum, 1);
        _mm_storeu_pd(out + i, _mm_unpacklo_pd(lo, hi));
    }
    for (; i < n; ++i) out[i] = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

} // namespace

const Kernels avx2{v_cmul, v_cmul_conj, v_cmul3_acc, v_caxpy, v_sumsq, v_wsumsq, v_abs2};

} // namespace wgs::simd

#elif defined(__aarch64__)

#include <arm_neon.h>

namespace wgs::simd {

namespace {

// One float64x2_t holds a single complex double (re,im).

inline float64x2_t cmul_f64(float64x2_t a, float64x2_t b) {
    float64x2_t re = vmulq_n_f64(a, vgetq_lane_f64(b, 0));
    float64x2_t sw = vextq_f64(a, a, 1);                 // (ai, ar)
    float64x2_t im = vmulq_n_f64(sw, vgetq_lane_f64(b, 1));
    const float64x2_t sign = {-1.0, 1.0};
    return vfmaq_f64(re, im, sign);
}

void v_cmul(cplx* a, const cplx* b, std::size_t n) {
    auto* pa = reinterpret_cast<double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i)
        vst1q_f64(pa + 2 * i, cmul_f64(vld1q_f64(pa + 2 * i), vld1q_f64(pb + 2 * i)));
}

void v_cmul_conj(cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= std::conj(b[i]);
}

void v_cmul3_acc(cplx* out, const cplx* f, const cplx* g, const cplx* h, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += f[i] * std::conj(g[i]) * h[i];
}

void v_caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double v_sumsq(const cplx* z, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    const auto* pz = reinterpret_cast<const double*>(z);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t v = vld1q_f64(pz + 2 * i);
        acc = vfmaq_f64(acc, v, v);
    }
    return vaddvq_f64(acc);
}

double v_wsumsq(const double* w, const cplx* z, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::norm(z[i]);
    return s;
}

void v_abs2(double* out, const cplx* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::norm(z[i]);
}

} // namespace

const Kernels neon{v_cmul, v_cmul_conj, v_cmul3_acc, v_caxpy, v_sumsq, v_wsumsq, v_abs2};

} // namespace wgs::simd

#else

// No vector unit targeted; the dispatcher falls back to the scalar table.

#endif
