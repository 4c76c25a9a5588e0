#ifndef WGS_FFT_HPP
#define WGS_FFT_HPP

// Thin wrapper over FFTW3 complex transforms with a process-wide plan cache.
// All transforms are in-place and unnormalized (raw DFT sums); callers apply
// the normalization of their conventions.

#include <complex>

namespace wgs::fft {

using cplx = std::complex<double>;

inline constexpr int forward = -1;
inline constexpr int backward = +1;

// howmany transforms of length n over data[k*stride + t*dist], t = 0..howmany-1.
void dft_many(cplx* data, int n, int howmany, int stride, int dist, int sign);

inline void dft(cplx* data, int n, int sign) { dft_many(data, n, 1, 1, 0, sign); }

} // namespace wgs::fft

#endif
