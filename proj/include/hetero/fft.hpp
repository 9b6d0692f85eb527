// SPDX-License-Identifier: Apache-2.0
//
// Self-contained complex FFT: iterative radix-2 plus Bluestein's algorithm
// for arbitrary lengths. Deterministic, no external dependencies; fast
// enough for the scalogram and circulant-embedding sizes used here.

#ifndef HETERO_FFT_HPP
#define HETERO_FFT_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace hetero::fft {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n && (n & (n - 1)) == 0; }

namespace detail {

inline void radix2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

inline void bluestein(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    // chirp w[k] = exp(±i·pi·k²/n); index squared taken mod 2n to keep the
    // phase argument small
    std::vector<cplx> w(n);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t k2 = (k * k) % (2 * n);
        double ang = sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        w[k] = cplx(std::cos(ang), std::sin(ang));
    }

    std::vector<cplx> x(m, cplx(0, 0)), y(m, cplx(0, 0));
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * w[k];
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = std::conj(w[k]);
        if (k) y[m - k] = std::conj(w[k]);
    }
    radix2(x, false);
    radix2(y, false);
    for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
    radix2(x, true);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * scale * w[k];
}

}  // namespace detail

/// In-place unnormalized DFT: X[k] = Σ_j x[j]·e^(−2πi·jk/n). The inverse
/// direction omits the 1/n factor; callers scale as needed.
inline void transform(std::vector<cplx>& a, bool inverse = false) {
    if (a.size() <= 1) return;
    if (is_pow2(a.size()))
        detail::radix2(a, inverse);
    else
        detail::bluestein(a, inverse);
}

/// Circular convolution-friendly helper: forward transform of a real vector.
inline std::vector<cplx> forward_real(const std::vector<double>& x) {
    std::vector<cplx> a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = cplx(x[i], 0.0);
    transform(a, false);
    return a;
}

}  // namespace hetero::fft

#endif  // HETERO_FFT_HPP
