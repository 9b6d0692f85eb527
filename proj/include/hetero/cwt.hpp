// SPDX-License-Identifier: Apache-2.0
//
// Complex Morlet continuous wavelet transform under periodic wrap, and the
// semi-log scale profile (log10 of position-averaged power vs linear scale).

#ifndef HETERO_CWT_HPP
#define HETERO_CWT_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hetero/errors.hpp"
#include "hetero/fft.hpp"
#include "hetero/series.hpp"

namespace hetero {

inline constexpr double kDefaultOmega0 = 6.0;

/// |W(s,b)|² on a scale × position grid.
struct Scalogram {
    std::vector<double> scales;               // strictly increasing, in samples
    std::vector<std::vector<double>> power;   // [n_scales][N]
    double omega0 = kDefaultOmega0;
};

/// One (scale, log10 mean power) point per scalogram scale.
struct ScaleProfile {
    std::vector<std::pair<double, double>> points;
};

/// 32 logarithmically spaced scales from 2 to N/8 samples.
inline std::vector<double> default_cwt_scales(std::size_t n, std::size_t count = 32) {
    double lo = 2.0, hi = static_cast<double>(n) / 8.0;
    std::vector<double> s(count);
    for (std::size_t i = 0; i < count; ++i) {
        double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        s[i] = lo * std::pow(hi / lo, t);
    }
    return s;
}

namespace detail {

// Morlet ψ(u) = π^(-1/4) e^(i·ω0·u) e^(-u²/2), sampled at wrapped offsets
// u = Δ/s with Δ ∈ [-N/2, N/2). Returns the conjugated, 1/√s scaled kernel
// indexed by Δ mod N, so that W(s,·) is the circular correlation x ⋆ kernel.
inline std::vector<fft::cplx> morlet_kernel(std::size_t n, double scale, double omega0) {
    const double norm = std::pow(std::numbers::pi, -0.25) / std::sqrt(scale);
    std::vector<fft::cplx> k(n);
    const long half = static_cast<long>(n) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        long delta = static_cast<long>(i);
        if (delta >= half) delta -= static_cast<long>(n);
        double u = static_cast<double>(delta) / scale;
        double env = norm * std::exp(-0.5 * u * u);
        // conj(ψ(u)) = π^{-1/4} e^{-iω0u} e^{-u²/2}
        k[i] = fft::cplx(env * std::cos(omega0 * u), -env * std::sin(omega0 * u));
    }
    return k;
}

}  // namespace detail

/// W(s,b) = (1/√s) Σ_t x(t) ψ*((t−b)/s) with the series mean-subtracted and
/// offsets wrapped periodically; power = |W|². Computed per scale via FFT
/// circular correlation, which matches the direct sum to rounding error.
inline Scalogram cwt_morlet(const SpatialSeries& series, std::vector<double> scales,
                            double omega0 = kDefaultOmega0) {
    if (omega0 < 5.0) throw BadOmega("omega0 must be >= 5");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (scales[i] < 1.0) throw BadScale("scale must be >= 1 sample");
        if (i && scales[i] <= scales[i - 1])
            throw BadScale("scales must be strictly increasing");
    }
    const std::size_t n = series.size();
    if (n == 0 || scales.empty()) throw BadScale("empty series or scale grid");

    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = series.values[i] - mean;

    std::vector<fft::cplx> xf = fft::forward_real(x);

    Scalogram sg;
    sg.scales = std::move(scales);
    sg.omega0 = omega0;
    sg.power.resize(sg.scales.size());
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t si = 0; si < sg.scales.size(); ++si) {
        std::vector<fft::cplx> kf = detail::morlet_kernel(n, sg.scales[si], omega0);
        fft::transform(kf, false);
        // correlation: FFT(W) = FFT(x) · conj(FFT(kernel))
        for (std::size_t k = 0; k < n; ++k) kf[k] = xf[k] * std::conj(kf[k]);
        fft::transform(kf, true);
        auto& row = sg.power[si];
        row.resize(n);
        for (std::size_t b = 0; b < n; ++b) row[b] = std::norm(kf[b] * inv_n);
    }
    return sg;
}

/// Direct O(N²) evaluation of the defining sum; the oracle for the FFT path.
inline std::vector<fft::cplx> cwt_morlet_direct_row(const std::vector<double>& x_centered,
                                                    double scale, double omega0) {
    const std::size_t n = x_centered.size();
    std::vector<fft::cplx> kernel = detail::morlet_kernel(n, scale, omega0);
    std::vector<fft::cplx> w(n, fft::cplx(0, 0));
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t t = 0; t < n; ++t)
            w[b] += x_centered[t] * kernel[(t - b + n) % n];
    return w;
}

/// log10 of position-averaged power at each scale; scale axis stays linear.
inline ScaleProfile semilog_profile(const Scalogram& sg) {
    ScaleProfile p;
    p.points.reserve(sg.scales.size());
    for (std::size_t si = 0; si < sg.scales.size(); ++si) {
        double mean = 0.0;
        for (double v : sg.power[si]) mean += v;
        mean /= static_cast<double>(sg.power[si].size());
        if (mean <= 0.0)
            throw ZeroPower("zero mean power at scale " + std::to_string(sg.scales[si]));
        p.points.emplace_back(sg.scales[si], std::log10(mean));
    }
    return p;
}

}  // namespace hetero

#endif  // HETERO_CWT_HPP
