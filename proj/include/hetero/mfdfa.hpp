// SPDX-License-Identifier: Apache-2.0
//
// Multifractal detrended fluctuation analysis: cumulative profile,
// segmentwise least-squares polynomial detrending, moment-averaged
// fluctuation function F_q(s), scaling fit h(q), and the Legendre-transform
// singularity spectrum (α, f(α)) with width Δα.

#ifndef HETERO_MFDFA_HPP
#define HETERO_MFDFA_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hetero/errors.hpp"
#include "hetero/series.hpp"

namespace hetero {

/// Cumulative sum of mean-subtracted values: Y(i) = Σ_{k≤i} (x_k − mean).
struct Profile {
    std::vector<double> values;
};

enum class ZeroSegmentPolicy { Exclude, Error };

struct MfdfaConfig {
    std::vector<int> scales;       // strictly increasing, each in [m+2, N/4]
    std::vector<double> q_grid;    // strictly increasing, must contain 2.0
    int detrend_order = 1;         // m in 0..3
    ZeroSegmentPolicy zero_segment_policy = ZeroSegmentPolicy::Exclude;
};

/// Per-segment detrended variances F²(b,s) at one scale. Segments are taken
/// from both ends of the profile (2·N_s of them). excluded_count tracks
/// zero-variance segments dropped under the Exclude policy.
struct SegmentFluctuations {
    int scale = 0;
    int order = 0;
    std::vector<double> values;
    int excluded_count = 0;
};

struct FluctuationRow {
    double q;
    int s;
    double fq;
};

struct FluctuationTable {
    std::vector<FluctuationRow> rows;
};

struct HurstEntry {
    double q;
    double h;
    double stderr_;
    double r2;
};

struct HurstSpectrum {
    std::vector<HurstEntry> entries;
    double hurst = 0.0;  // h(2)
    std::vector<double> monotonicity_warnings;  // q where h(q) rose beyond 3·stderr
};

struct SingularitySpectrum {
    std::vector<std::pair<double, double>> tau;     // (q, τ(q)), τ = q·h(q) − 1
    std::vector<std::pair<double, double>> points;  // (α, f(α))
    double width = 0.0;                             // Δα = max α − min α
};

/// 20 unique integers logarithmically spaced in [16, N/4].
inline std::vector<int> default_mfdfa_scales(std::size_t n, int count = 20) {
    double lo = 16.0, hi = static_cast<double>(n) / 4.0;
    std::vector<int> s;
    for (int i = 0; i < count; ++i) {
        double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        int v = static_cast<int>(std::lround(lo * std::pow(hi / lo, t)));
        if (s.empty() || v > s.back()) s.push_back(v);
    }
    return s;
}

/// q grid from qmin to qmax inclusive; defaults to −5..5 step 0.5.
inline std::vector<double> make_q_grid(double qmin = -5.0, double qmax = 5.0,
                                       double step = 0.5) {
    if (step <= 0 || qmax < qmin) throw BadParam("invalid q grid");
    std::vector<double> q;
    int n = static_cast<int>(std::lround((qmax - qmin) / step));
    for (int i = 0; i <= n; ++i) q.push_back(qmin + i * step);
    return q;
}

inline MfdfaConfig default_mfdfa_config(std::size_t n) {
    MfdfaConfig c;
    c.scales = default_mfdfa_scales(n);
    c.q_grid = make_q_grid();
    return c;
}

inline Profile profile(const SpatialSeries& series) {
    validate_series(series);
    const std::size_t n = series.size();
    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);
    Profile p;
    p.values.resize(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += series.values[i] - mean;
        p.values[i] = acc;
    }
    return p;
}

namespace detail {

// Least-squares polynomial detrending shared across all segments at one
// scale: abscissa mapped to [-1,1], Gram matrix factored once (Cholesky),
// each segment then costs one rhs solve.
class SegmentDetrender {
public:
    SegmentDetrender(int s, int m) : s_(s), m_(m) {
        if (s < m + 2) throw SingularFit("scale " + std::to_string(s) +
                                         " too small for order " + std::to_string(m));
        powers_.assign(m + 1, std::vector<double>(s));
        for (int i = 0; i < s; ++i) {
            double t = s == 1 ? 0.0 : -1.0 + 2.0 * i / (s - 1.0);
            double p = 1.0;
            for (int j = 0; j <= m; ++j) {
                powers_[j][i] = p;
                p *= t;
            }
        }
        // Gram matrix G[j][k] = Σ_i t_i^{j+k}, Cholesky factor L
        std::vector<std::vector<double>> g(m + 1, std::vector<double>(m + 1, 0.0));
        for (int j = 0; j <= m; ++j)
            for (int k = j; k <= m; ++k) {
                double acc = 0.0;
                for (int i = 0; i < s; ++i) acc += powers_[j][i] * powers_[k][i];
                g[j][k] = g[k][j] = acc;
            }
        chol_ = g;
        for (int j = 0; j <= m; ++j) {
            for (int k = 0; k <= j; ++k) {
                double sum = chol_[j][k];
                for (int t = 0; t < k; ++t) sum -= chol_[j][t] * chol_[k][t];
                if (j == k) {
                    if (sum <= 0.0) throw SingularFit("ill-conditioned polynomial fit");
                    chol_[j][j] = std::sqrt(sum);
                } else {
                    chol_[j][k] = sum / chol_[k][k];
                }
            }
        }
    }

    // Mean squared residual of the order-m fit over one segment.
    double detrended_variance(const double* y) const {
        const int m = m_;
        double rhs[4] = {0, 0, 0, 0};
        for (int j = 0; j <= m; ++j) {
            double acc = 0.0;
            for (int i = 0; i < s_; ++i) acc += powers_[j][i] * y[i];
            rhs[j] = acc;
        }
        double z[4], c[4];
        for (int j = 0; j <= m; ++j) {
            double sum = rhs[j];
            for (int t = 0; t < j; ++t) sum -= chol_[j][t] * z[t];
            z[j] = sum / chol_[j][j];
        }
        for (int j = m; j >= 0; --j) {
            double sum = z[j];
            for (int t = j + 1; t <= m; ++t) sum -= chol_[t][j] * c[t];
            c[j] = sum / chol_[j][j];
        }
        double ss = 0.0;
        for (int i = 0; i < s_; ++i) {
            double fit = 0.0;
            for (int j = 0; j <= m; ++j) fit += c[j] * powers_[j][i];
            double r = y[i] - fit;
            ss += r * r;
        }
        return ss / static_cast<double>(s_);
    }

private:
    int s_, m_;
    std::vector<std::vector<double>> powers_;
    std::vector<std::vector<double>> chol_;
};

struct LineFit {
    double slope, stderr_, r2;
};

inline LineFit ols_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    double intercept = my - f.slope * mx;
    double ssres = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (intercept + f.slope * x[i]);
        ssres += r * r;
    }
    f.stderr_ = n > 2 ? std::sqrt(ssres / (n - 2) / sxx) : 0.0;
    f.r2 = syy > 0 ? 1.0 - ssres / syy : 1.0;
    return f;
}

}  // namespace detail

/// F²(b,s) for every segment: the profile is partitioned into N_s = ⌊N/s⌋
/// segments from the start and another N_s from the end; each is detrended
/// by an order-m least-squares polynomial and the residual variance taken.
inline SegmentFluctuations segment_fluctuation(const Profile& p, int s, int m) {
    const std::size_t n = p.values.size();
    // config-level grids are capped at N/4; the operation itself only needs
    // at least one segment per end
    if (s < m + 2 || static_cast<std::size_t>(s) > n / 2)
        throw BadScale("scale " + std::to_string(s) + " outside [m+2, N/2]");
    if (m < 0) throw BadParam("detrend order must be >= 0");

    detail::SegmentDetrender fit(s, m);
    const std::size_t ns = n / static_cast<std::size_t>(s);
    SegmentFluctuations out;
    out.scale = s;
    out.order = m;
    out.values.reserve(2 * ns);
    for (std::size_t b = 0; b < ns; ++b)
        out.values.push_back(fit.detrended_variance(p.values.data() + b * s));
    for (std::size_t b = 0; b < ns; ++b)
        out.values.push_back(fit.detrended_variance(p.values.data() + (n - (b + 1) * s)));
    return out;
}

/// Drops exact-zero variances, recording how many were removed.
inline SegmentFluctuations exclude_zero_segments(const SegmentFluctuations& sf) {
    SegmentFluctuations out;
    out.scale = sf.scale;
    out.order = sf.order;
    for (double v : sf.values) {
        if (v > 0.0)
            out.values.push_back(v);
        else
            ++out.excluded_count;
    }
    out.excluded_count += sf.excluded_count;
    return out;
}

/// F_q(s): the generalized mean over retained segments,
///   q ≠ 0: { (1/n) Σ_b [F²(b,s)]^{q/2} }^{1/q}
///   q = 0: exp( (1/(2n)) Σ_b ln F²(b,s) )   (logarithmic-average limit)
/// where n is the retained segment count.
inline double fluctuation_function(const SegmentFluctuations& sf, double q,
                                   ZeroSegmentPolicy policy = ZeroSegmentPolicy::Exclude) {
    const SegmentFluctuations* use = &sf;
    SegmentFluctuations filtered;
    bool has_zero = std::any_of(sf.values.begin(), sf.values.end(),
                                [](double v) { return v <= 0.0; });
    if (has_zero && q <= 0.0) {
        if (policy == ZeroSegmentPolicy::Error)
            throw NegativeMomentOnZero("zero-variance segment at scale " +
                                       std::to_string(sf.scale) + " with q = " +
                                       std::to_string(q));
        filtered = exclude_zero_segments(sf);
        use = &filtered;
    }
    if (use->values.empty())
        throw AllSegmentsDegenerate("no retained segments at scale " +
                                    std::to_string(sf.scale));
    const double n = static_cast<double>(use->values.size());
    if (q == 0.0) {
        double acc = 0.0;
        for (double v : use->values) acc += std::log(v);
        return std::exp(acc / (2.0 * n));
    }
    double acc = 0.0;
    for (double v : use->values) acc += std::pow(v, q / 2.0);
    return std::pow(acc / n, 1.0 / q);
}

inline void validate_config(const MfdfaConfig& cfg, std::size_t n) {
    if (cfg.scales.size() < 8)
        throw BadParam("need at least 8 scales, got " + std::to_string(cfg.scales.size()));
    for (std::size_t i = 0; i < cfg.scales.size(); ++i) {
        if (cfg.scales[i] < cfg.detrend_order + 2 ||
            static_cast<std::size_t>(cfg.scales[i]) > n / 4)
            throw BadScale("scale " + std::to_string(cfg.scales[i]) + " outside [m+2, N/4]");
        if (i && cfg.scales[i] <= cfg.scales[i - 1])
            throw BadParam("scales must be strictly increasing");
    }
    if (cfg.q_grid.empty()) throw BadParam("empty q grid");
    for (std::size_t i = 1; i < cfg.q_grid.size(); ++i)
        if (cfg.q_grid[i] <= cfg.q_grid[i - 1])
            throw BadParam("q grid must be strictly increasing");
    if (std::none_of(cfg.q_grid.begin(), cfg.q_grid.end(),
                     [](double q) { return q == 2.0; }))
        throw BadParam("q grid must contain 2.0 (Hurst readout)");
    if (cfg.detrend_order < 0 || cfg.detrend_order > 3)
        throw BadParam("detrend order must be in 0..3");
}

/// Full Eq.-chain evaluation: F_q(s) over the (q, s) grid, then per-q OLS of
/// ln F_q(s) on ln s. The slope is h(q); hurst = h(2).
inline std::pair<FluctuationTable, HurstSpectrum> hurst_spectrum(const Profile& p,
                                                                 const MfdfaConfig& cfg) {
    validate_config(cfg, p.values.size());

    std::vector<SegmentFluctuations> per_scale;
    per_scale.reserve(cfg.scales.size());
    for (int s : cfg.scales) per_scale.push_back(segment_fluctuation(p, s, cfg.detrend_order));

    FluctuationTable table;
    HurstSpectrum hs;
    table.rows.reserve(cfg.q_grid.size() * cfg.scales.size());
    for (double q : cfg.q_grid) {
        std::vector<double> ln_s, ln_f;
        for (std::size_t k = 0; k < per_scale.size(); ++k) {
            double fq = fluctuation_function(per_scale[k], q, cfg.zero_segment_policy);
            table.rows.push_back({q, cfg.scales[k], fq});
            if (fq > 0.0 && std::isfinite(fq)) {
                ln_s.push_back(std::log(static_cast<double>(cfg.scales[k])));
                ln_f.push_back(std::log(fq));
            }
        }
        if (ln_s.size() < 8)
            throw FitFailure("fewer than 8 valid scales for q = " + std::to_string(q));
        detail::LineFit fit = detail::ols_line(ln_s, ln_f);
        hs.entries.push_back({q, fit.slope, fit.stderr_, fit.r2});
        if (q == 2.0) hs.hurst = fit.slope;
    }
    for (std::size_t i = 1; i < hs.entries.size(); ++i) {
        const auto& a = hs.entries[i - 1];
        const auto& b = hs.entries[i];
        if (b.h > a.h + 3.0 * std::max(a.stderr_, b.stderr_))
            hs.monotonicity_warnings.push_back(b.q);
    }
    return {std::move(table), std::move(hs)};
}

/// Legendre transform on the q grid: τ(q) = q·h(q) − 1, α = dτ/dq by central
/// finite differences (one-sided at the ends), f(α) = q·α − τ.
inline SingularitySpectrum singularity_spectrum(const HurstSpectrum& hs) {
    const std::size_t n = hs.entries.size();
    if (n < 5) throw TooFewPoints("need at least 5 q points, got " + std::to_string(n));

    SingularitySpectrum ss;
    ss.tau.reserve(n);
    for (const auto& e : hs.entries) ss.tau.emplace_back(e.q, e.q * e.h - 1.0);

    ss.points.reserve(n);
    double amin = 0, amax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i == 0 ? 0 : i - 1;
        std::size_t hi = i == n - 1 ? n - 1 : i + 1;
        double alpha = (ss.tau[hi].second - ss.tau[lo].second) /
                       (ss.tau[hi].first - ss.tau[lo].first);
        double f = hs.entries[i].q * alpha - ss.tau[i].second;
        ss.points.emplace_back(alpha, f);
        if (i == 0) {
            amin = amax = alpha;
        } else {
            amin = std::min(amin, alpha);
            amax = std::max(amax, alpha);
        }
    }
    ss.width = amax - amin;
    return ss;
}

/// Pipeline entry point: rejects zero-variance input, then profiles, fits,
/// and transforms in one call.
struct MfdfaResult {
    FluctuationTable table;
    HurstSpectrum hurst;
    SingularitySpectrum spectrum;
};

inline MfdfaResult mfdfa_analyze(const SpatialSeries& series, const MfdfaConfig& cfg) {
    double mean = 0.0, var = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(series.size());
    for (double v : series.values) var += (v - mean) * (v - mean);
    if (var <= 0.0) throw DegenerateSignal("degenerate: zero variance");

    Profile p = profile(series);
    auto [table, hs] = hurst_spectrum(p, cfg);
    MfdfaResult r;
    r.spectrum = singularity_spectrum(hs);
    r.table = std::move(table);
    r.hurst = std::move(hs);
    return r;
}

}  // namespace hetero

#endif  // HETERO_MFDFA_HPP
