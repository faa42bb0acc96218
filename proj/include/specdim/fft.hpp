// Iterative radix-2 complex FFT, enough for exact integer convolutions of
// 0/1 indicator vectors (the counting path pads to a power of two anyway).
#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

namespace specdim {

using cplx = std::complex<double>;

// In-place FFT; size must be a power of two. sign = -1 forward, +1 inverse
// (inverse is unnormalized; caller divides by n).
inline void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * 3.14159265358979323846 / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Linear self-convolution of a real vector via FFT, rounded to integers by the
// caller. Result length is 2*x.size() - 1. min_size lets the caller demand a
// larger transform than the aliasing-free minimum.
inline std::vector<double> self_convolve_fft(const std::vector<double>& x,
                                             std::size_t min_size = 0) {
    if (x.empty()) return {};
    const std::size_t m = 2 * x.size() - 1;
    const std::size_t n = next_pow2(std::max(m, min_size));
    std::vector<cplx> a(n, cplx(0, 0));
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = cplx(x[i], 0.0);
    fft_pow2(a, -1);
    for (auto& v : a) v *= v;
    fft_pow2(a, +1);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = a[i].real() / static_cast<double>(n);
    return out;
}

} // namespace specdim
