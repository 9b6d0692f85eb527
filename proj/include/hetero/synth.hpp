// SPDX-License-Identifier: Apache-2.0
//
// Synthetic series with known fractal properties: seeded Gaussian white
// noise, exact fractional Gaussian noise by circulant embedding, and the
// deterministic binomial cascade with its closed-form h(q).
//
// Randomness is mt19937_64 plus a hand-rolled Box-Muller, both fully
// specified, so a (kind, params, seed) triple is reproducible across
// platforms.

#ifndef HETERO_SYNTH_HPP
#define HETERO_SYNTH_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hetero/errors.hpp"
#include "hetero/fft.hpp"
#include "hetero/series.hpp"

namespace hetero {

/// Deterministic standard-normal stream.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1)
        double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
        double u2 = static_cast<double>(eng_() >> 11) * 0x1p-53;
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// i.i.d. standard Gaussian series.
inline SpatialSeries gen_white_noise(std::size_t n, std::uint64_t seed) {
    if (n < kMinSeriesLength) throw BadLength("white noise length must be >= 64");
    GaussianStream g(seed);
    SpatialSeries s;
    s.values.resize(n);
    for (auto& v : s.values) v = g.next();
    s.provenance = "white noise, n=" + std::to_string(n) + ", seed=" + std::to_string(seed);
    return s;
}

/// Stationary fractional Gaussian noise with Hurst exponent H and unit
/// variance, by circulant embedding of the fGn autocovariance
/// γ(k) = ½(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H}). Exact for any H where the
/// embedding stays nonnegative-definite (always, for fGn).
inline SpatialSeries gen_fgn(double hurst, std::size_t n, std::uint64_t seed) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw BadH("H must be in (0,1)");
    if (n < 256 || !fft::is_pow2(n)) throw BadLength("fGn length must be a power of two >= 256");

    const std::size_t m = 2 * n;
    std::vector<double> gamma(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        double kk = static_cast<double>(k);
        gamma[k] = 0.5 * (std::pow(kk + 1.0, 2.0 * hurst) -
                          2.0 * std::pow(kk, 2.0 * hurst) +
                          std::pow(std::abs(kk - 1.0), 2.0 * hurst));
    }
    std::vector<fft::cplx> c(m);
    c[0] = gamma[0];
    c[n] = gamma[n];
    for (std::size_t k = 1; k < n; ++k) c[k] = c[m - k] = gamma[k];
    fft::transform(c, false);

    // circulant eigenvalues; tiny negative round-off is zeroed, anything
    // materially negative is a genuine embedding failure
    std::vector<double> lambda(m);
    double lmax = 0.0;
    for (std::size_t k = 0; k < m; ++k) lmax = std::max(lmax, c[k].real());
    for (std::size_t k = 0; k < m; ++k) {
        double l = c[k].real();
        if (l < -1e-9 * lmax)
            throw EmbeddingFailure("negative circulant eigenvalue: " + std::to_string(l));
        lambda[k] = std::max(l, 0.0);
    }

    GaussianStream g(seed);
    std::vector<fft::cplx> w(m);
    w[0] = std::sqrt(lambda[0]) * g.next();
    w[n] = std::sqrt(lambda[n]) * g.next();
    for (std::size_t k = 1; k < n; ++k) {
        double a = g.next(), b = g.next();
        fft::cplx v = std::sqrt(lambda[k] / 2.0) * fft::cplx(a, b);
        w[k] = v;
        w[m - k] = std::conj(v);
    }
    fft::transform(w, false);

    SpatialSeries s;
    s.values.resize(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t i = 0; i < n; ++i) s.values[i] = w[i].real() * scale;
    s.provenance = "fGn H=" + std::to_string(hurst) + ", n=" + std::to_string(n) +
                   ", seed=" + std::to_string(seed);
    return s;
}

/// Deterministic multiplicative cascade: [1] → (v·a, v·(1−a)) per level.
/// Output length 2^levels, values positive and summing to 1.
inline SpatialSeries gen_binomial_cascade(double a, int levels) {
    if (!(a > 0.0 && a < 1.0)) throw BadParam("cascade weight a must be in (0,1)");
    if (levels < 1 || levels > 24) throw BadParam("cascade levels must be in 1..24");
    std::vector<double> v{1.0};
    for (int l = 0; l < levels; ++l) {
        std::vector<double> next;
        next.reserve(v.size() * 2);
        for (double x : v) {
            next.push_back(x * a);
            next.push_back(x * (1.0 - a));
        }
        v.swap(next);
    }
    SpatialSeries s;
    s.values = std::move(v);
    s.provenance = "binomial cascade a=" + std::to_string(a) +
                   ", levels=" + std::to_string(levels);
    return s;
}

/// Closed-form generalized Hurst exponent of the binomial cascade:
///   h(q) = 1/q − ln(a^q + (1−a)^q)/(q·ln 2),   q ≠ 0
///   h(0) = −ln(a(1−a))/(2·ln 2)                (analytic limit)
inline double analytic_cascade_h(double q, double a) {
    if (!(a > 0.0 && a < 1.0)) throw BadParam("cascade weight a must be in (0,1)");
    const double b = 1.0 - a;
    if (std::abs(q) < 1e-8) return -std::log(a * b) / (2.0 * std::numbers::ln2);
    return 1.0 / q - std::log(std::pow(a, q) + std::pow(b, q)) / (q * std::numbers::ln2);
}

}  // namespace hetero

#endif  // HETERO_SYNTH_HPP
