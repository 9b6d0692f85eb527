// SPDX-License-Identifier: Apache-2.0
//
// Orthonormal discrete wavelet transform (Haar, db2, db4) with periodic
// boundary extension: multilevel pyramid, perfect-reconstruction inverse,
// trend/fluctuation split, and per-level normalized detail energy.

#ifndef HETERO_DWT_HPP
#define HETERO_DWT_HPP

#include <cmath>
#include <string>
#include <vector>

#include "hetero/errors.hpp"
#include "hetero/series.hpp"

namespace hetero {

/// Orthonormal filter pair. The highpass is the quadrature mirror of the
/// lowpass: g[k] = (-1)^k · h[L-1-k].
struct WaveletSpec {
    std::string name;
    std::vector<double> lowpass;
    std::vector<double> highpass;

    static WaveletSpec haar() {
        return make("haar", {0.70710678118654752440, 0.70710678118654752440});
    }
    // Daubechies, 2 vanishing moments (4 taps)
    static WaveletSpec db2() {
        return make("db2", {0.48296291314469025, 0.836516303737469,
                            0.22414386804185735, -0.12940952255092145});
    }
    // Daubechies, 4 vanishing moments (8 taps)
    static WaveletSpec db4() {
        return make("db4", {0.23037781330885523, 0.7148465705525415,
                            0.6308807679295904, -0.02798376941698385,
                            -0.18703481171888114, 0.030841381835986965,
                            0.032883011666982945, -0.010597401784997278});
    }

    static WaveletSpec by_name(const std::string& name) {
        if (name == "haar") return haar();
        if (name == "db2") return db2();
        if (name == "db4") return db4();
        throw BadParam("unknown wavelet: " + name);
    }

private:
    static WaveletSpec make(std::string name, std::vector<double> h) {
        WaveletSpec w;
        w.name = std::move(name);
        w.highpass.resize(h.size());
        for (std::size_t k = 0; k < h.size(); ++k) {
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            w.highpass[k] = sign * h[h.size() - 1 - k];
        }
        w.lowpass = std::move(h);
        return w;
    }
};

/// Pyramid output. details[0] is level 1 (finest). boundary is always
/// "periodic"; odd stage lengths are padded by repeating the last sample,
/// which the inverse undoes (stage lengths are recomputable from
/// original_length).
struct WaveletDecomposition {
    int levels = 0;
    std::vector<double> approx;
    std::vector<std::vector<double>> details;
    std::size_t original_length = 0;
    std::string boundary = "periodic";
};

/// Normalized detail-band energies. detail_energy[j-1] is level j's share of
/// total detail energy; the approximation band is reported separately.
struct EnergyProfile {
    std::vector<double> detail_energy;
    double approx_fraction = 0.0;
};

struct DenoiseResult {
    SpatialSeries denoised;  // approximation-only reconstruction (trend)
    SpatialSeries residual;  // input − denoised (fluctuations)
};

namespace detail {

// One analysis stage under periodic extension. x must have even length.
inline void dwt_stage(const std::vector<double>& x, const WaveletSpec& w,
                      std::vector<double>& approx, std::vector<double>& det) {
    const std::size_t n = x.size();
    const std::size_t half = n / 2;
    const std::size_t taps = w.lowpass.size();
    approx.assign(half, 0.0);
    det.assign(half, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (std::size_t t = 0; t < taps; ++t) {
            double v = x[(2 * k + t) % n];
            a += w.lowpass[t] * v;
            d += w.highpass[t] * v;
        }
        approx[k] = a;
        det[k] = d;
    }
}

// Adjoint of dwt_stage; exact inverse since the stage is orthonormal.
inline std::vector<double> idwt_stage(const std::vector<double>& approx,
                                      const std::vector<double>& det,
                                      const WaveletSpec& w, std::size_t out_len) {
    const std::size_t n = approx.size() * 2;
    const std::size_t taps = w.lowpass.size();
    std::vector<double> x(n, 0.0);
    for (std::size_t k = 0; k < approx.size(); ++k) {
        for (std::size_t t = 0; t < taps; ++t) {
            x[(2 * k + t) % n] += w.lowpass[t] * approx[k] + w.highpass[t] * det[k];
        }
    }
    x.resize(out_len);  // drop the pad sample if the stage input was odd
    return x;
}

}  // namespace detail

/// Standard pyramid algorithm: convolve with the filter pair, downsample by
/// 2, recurse on the approximation.
inline WaveletDecomposition dwt_forward(const std::vector<double>& series,
                                        const WaveletSpec& wavelet, int levels) {
    if (levels < 1) throw BadLevels("levels must be >= 1");
    if (series.size() < (std::size_t{1} << levels))
        throw TooShort("series length " + std::to_string(series.size()) +
                       " < 2^levels = " + std::to_string(std::size_t{1} << levels));

    WaveletDecomposition out;
    out.levels = levels;
    out.original_length = series.size();
    out.details.resize(levels);

    std::vector<double> cur = series;
    std::vector<double> next;
    for (int j = 0; j < levels; ++j) {
        if (cur.size() % 2 != 0) cur.push_back(cur.back());
        detail::dwt_stage(cur, wavelet, next, out.details[j]);
        cur.swap(next);
    }
    out.approx = std::move(cur);
    return out;
}

inline WaveletDecomposition dwt_forward(const SpatialSeries& series,
                                        const WaveletSpec& wavelet, int levels) {
    return dwt_forward(series.values, wavelet, levels);
}

/// Perfect reconstruction from a decomposition made with the same wavelet.
inline std::vector<double> dwt_inverse(const WaveletDecomposition& decomp,
                                       const WaveletSpec& wavelet) {
    if (decomp.levels < 1 || static_cast<int>(decomp.details.size()) != decomp.levels)
        throw ShapeMismatch("decomposition has inconsistent level count");

    // stage input lengths, recomputed from original_length
    std::vector<std::size_t> stage_len(decomp.levels + 1);
    stage_len[0] = decomp.original_length;
    for (int j = 0; j < decomp.levels; ++j)
        stage_len[j + 1] = (stage_len[j] + 1) / 2;

    for (int j = 0; j < decomp.levels; ++j)
        if (decomp.details[j].size() != stage_len[j + 1])
            throw ShapeMismatch("detail level " + std::to_string(j + 1) +
                                " length inconsistent with original_length");
    if (decomp.approx.size() != stage_len[decomp.levels])
        throw ShapeMismatch("approximation length inconsistent with original_length");

    std::vector<double> cur = decomp.approx;
    for (int j = decomp.levels - 1; j >= 0; --j)
        cur = detail::idwt_stage(cur, decomp.details[j], wavelet, stage_len[j]);
    return cur;
}

/// Trend/fluctuation split: reconstruct with all detail levels zeroed.
inline DenoiseResult denoise(const SpatialSeries& series, const WaveletSpec& wavelet,
                             int levels) {
    WaveletDecomposition d = dwt_forward(series.values, wavelet, levels);
    for (auto& lvl : d.details) std::fill(lvl.begin(), lvl.end(), 0.0);
    DenoiseResult r;
    r.denoised.values = dwt_inverse(d, wavelet);
    r.denoised.provenance = series.provenance + " (denoised)";
    r.residual.values.resize(series.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        r.residual.values[i] = series.values[i] - r.denoised.values[i];
    r.residual.provenance = series.provenance + " (fluctuations)";
    return r;
}

/// Per-level share of total detail energy, plus the approximation band's
/// share of total coefficient energy.
inline EnergyProfile normalized_energy(const WaveletDecomposition& decomp) {
    double detail_total = 0.0;
    std::vector<double> per_level(decomp.details.size(), 0.0);
    for (std::size_t j = 0; j < decomp.details.size(); ++j) {
        for (double d : decomp.details[j]) per_level[j] += d * d;
        detail_total += per_level[j];
    }
    if (detail_total <= 0.0)
        throw DegenerateSignal("all detail energies are zero");
    double approx_energy = 0.0;
    for (double c : decomp.approx) approx_energy += c * c;

    EnergyProfile p;
    p.detail_energy.resize(per_level.size());
    for (std::size_t j = 0; j < per_level.size(); ++j)
        p.detail_energy[j] = per_level[j] / detail_total;
    p.approx_fraction = approx_energy / (approx_energy + detail_total);
    return p;
}

}  // namespace hetero

#endif  // HETERO_DWT_HPP
