// SPDX-License-Identifier: Apache-2.0
//
// Full per-image pipeline for both unfoldings, mismatch metrics, verdict,
// and JSON/CSV serialization.

#ifndef HETERO_REPORT_HPP
#define HETERO_REPORT_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hetero/cwt.hpp"
#include "hetero/dwt.hpp"
#include "hetero/errors.hpp"
#include "hetero/grid.hpp"
#include "hetero/mfdfa.hpp"

namespace hetero {

using ordered_json = nlohmann::ordered_json;

struct Thresholds {
    double hurst = 0.05;   // θ_H on |h_v(2) − h_h(2)|
    double width = 0.10;   // θ_W on |Δα_v − Δα_h|
    double energy = 0.10;  // θ_E on Σ_j |E_v[j] − E_h[j]|
};

struct AnalysisConfig {
    std::string wavelet = "db4";
    int levels = 5;
    double omega0 = kDefaultOmega0;
    std::size_t cwt_scale_count = 32;
    double q_min = -5.0, q_max = 5.0, q_step = 0.5;
    int detrend_order = 1;
    int mfdfa_scale_count = 20;
    bool raw = false;  // analyze the raw series instead of the DWT fluctuations
    Thresholds thresholds;
};

struct UnfoldAnalysis {
    UnfoldDirection direction;
    EnergyProfile energy;
    ScaleProfile scale_profile;
    FluctuationTable fluctuations;
    HurstSpectrum hurst;
    SingularitySpectrum spectrum;
};

struct MismatchMetrics {
    double delta_hurst = 0.0;
    double delta_width = 0.0;
    double energy_l1 = 0.0;
};

enum class Verdict { Heterogeneous, NotDistinguished };

inline const char* to_string(Verdict v) {
    return v == Verdict::Heterogeneous ? "Heterogeneous" : "NotDistinguished";
}

struct HeterogeneityReport {
    std::string input_digest;
    AnalysisConfig config;
    UnfoldAnalysis vertical;
    UnfoldAnalysis horizontal;
    MismatchMetrics metrics;
    Verdict verdict = Verdict::NotDistinguished;
};

/// FNV-1a 64 over the canonical P5 serialization.
inline std::string image_digest(const ImageGrid& g) {
    std::string bytes = serialize_pgm(g);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    for (int i = 15; i >= 0; --i) {
        buf[i] = "0123456789abcdef"[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string("fnv1a64:") + buf;
}

/// Mismatch metrics and verdict. Heterogeneous iff any metric strictly
/// exceeds its threshold.
inline std::pair<MismatchMetrics, Verdict> compare(const UnfoldAnalysis& v,
                                                   const UnfoldAnalysis& h,
                                                   const Thresholds& th) {
    if (v.energy.detail_energy.size() != h.energy.detail_energy.size())
        throw ConfigMismatch("energy profiles have different level counts");
    if (v.hurst.entries.size() != h.hurst.entries.size())
        throw ConfigMismatch("hurst spectra have different q grids");
    for (std::size_t i = 0; i < v.hurst.entries.size(); ++i)
        if (v.hurst.entries[i].q != h.hurst.entries[i].q)
            throw ConfigMismatch("hurst spectra have different q grids");

    MismatchMetrics m;
    m.delta_hurst = std::abs(v.hurst.hurst - h.hurst.hurst);
    m.delta_width = std::abs(v.spectrum.width - h.spectrum.width);
    for (std::size_t j = 0; j < v.energy.detail_energy.size(); ++j)
        m.energy_l1 += std::abs(v.energy.detail_energy[j] - h.energy.detail_energy[j]);

    Verdict verdict = (m.delta_hurst > th.hurst || m.delta_width > th.width ||
                       m.energy_l1 > th.energy)
                          ? Verdict::Heterogeneous
                          : Verdict::NotDistinguished;
    return {m, verdict};
}

namespace detail {

inline UnfoldAnalysis analyze_direction(const SpatialSeries& series, UnfoldDirection dir,
                                        const AnalysisConfig& cfg) {
    try {
        UnfoldAnalysis a;
        a.direction = dir;

        WaveletSpec w = WaveletSpec::by_name(cfg.wavelet);
        WaveletDecomposition decomp = dwt_forward(series, w, cfg.levels);
        a.energy = normalized_energy(decomp);

        DenoiseResult split = denoise(series, w, cfg.levels);
        const SpatialSeries& target = cfg.raw ? series : split.residual;

        Scalogram sg = cwt_morlet(target, default_cwt_scales(target.size(), cfg.cwt_scale_count),
                                  cfg.omega0);
        a.scale_profile = semilog_profile(sg);

        MfdfaConfig mc;
        mc.scales = default_mfdfa_scales(target.size(), cfg.mfdfa_scale_count);
        mc.q_grid = make_q_grid(cfg.q_min, cfg.q_max, cfg.q_step);
        mc.detrend_order = cfg.detrend_order;
        MfdfaResult mr = mfdfa_analyze(target, mc);
        a.fluctuations = std::move(mr.table);
        a.hurst = std::move(mr.hurst);
        a.spectrum = std::move(mr.spectrum);
        return a;
    } catch (const DegeneracyError& e) {
        throw DegeneracyError(std::string(to_string(dir)) + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(std::string(to_string(dir)) + ": " + e.what());
    }
}

}  // namespace detail

/// Unfolds both directions and runs the whole pipeline on each: normalized
/// detail energy on the raw series, then Morlet profile and MFDFA on the
/// DWT fluctuation series (or the raw series with cfg.raw).
inline HeterogeneityReport analyze_image(const ImageGrid& grid, const AnalysisConfig& cfg) {
    HeterogeneityReport r;
    r.input_digest = image_digest(grid);
    r.config = cfg;
    r.horizontal = detail::analyze_direction(unfold(grid, UnfoldDirection::Horizontal),
                                             UnfoldDirection::Horizontal, cfg);
    r.vertical = detail::analyze_direction(unfold(grid, UnfoldDirection::Vertical),
                                           UnfoldDirection::Vertical, cfg);
    auto [metrics, verdict] = compare(r.vertical, r.horizontal, cfg.thresholds);
    r.metrics = metrics;
    r.verdict = verdict;
    return r;
}

// ---------------------------------------------------------------------------
// serialization

/// Shortest round-trip decimal rendering, locale-independent.
inline std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline ordered_json config_to_json(const AnalysisConfig& c) {
    ordered_json j;
    j["wavelet"] = c.wavelet;
    j["levels"] = c.levels;
    j["omega0"] = c.omega0;
    j["cwt_scale_count"] = c.cwt_scale_count;
    j["q_min"] = c.q_min;
    j["q_max"] = c.q_max;
    j["q_step"] = c.q_step;
    j["detrend_order"] = c.detrend_order;
    j["mfdfa_scale_count"] = c.mfdfa_scale_count;
    j["analysis_input"] = c.raw ? "raw" : "fluctuation";
    j["scan_order"] = "raster";
    j["semilog_convention"] = "log10_mean_power_vs_linear_scale";
    j["boundary"] = "periodic";
    return j;
}

inline ordered_json analysis_to_json(const UnfoldAnalysis& a) {
    ordered_json j;
    j["direction"] = to_string(a.direction);
    j["energy"]["detail_energy"] = a.energy.detail_energy;
    j["energy"]["approx_fraction"] = a.energy.approx_fraction;
    ordered_json prof = ordered_json::array();
    for (const auto& [s, lp] : a.scale_profile.points) prof.push_back({s, lp});
    j["scale_profile"] = std::move(prof);
    ordered_json fl = ordered_json::array();
    for (const auto& row : a.fluctuations.rows) fl.push_back({row.q, row.s, row.fq});
    j["fluctuations"] = std::move(fl);
    j["hurst"]["h2"] = a.hurst.hurst;
    ordered_json entries = ordered_json::array();
    for (const auto& e : a.hurst.entries) {
        entries.push_back({{"q", e.q}, {"h", e.h}, {"stderr", e.stderr_}, {"r2", e.r2}});
    }
    j["hurst"]["entries"] = std::move(entries);
    j["hurst"]["monotonicity_warnings"] = a.hurst.monotonicity_warnings;
    ordered_json tau = ordered_json::array();
    for (const auto& [q, t] : a.spectrum.tau) tau.push_back({q, t});
    j["spectrum"]["tau"] = std::move(tau);
    ordered_json pts = ordered_json::array();
    for (const auto& [al, f] : a.spectrum.points) pts.push_back({al, f});
    j["spectrum"]["points"] = std::move(pts);
    j["spectrum"]["width"] = a.spectrum.width;
    return j;
}

inline ordered_json report_to_json(const HeterogeneityReport& r) {
    ordered_json j;
    j["schema_version"] = "1";
    j["input_digest"] = r.input_digest;
    j["config"] = config_to_json(r.config);
    j["horizontal"] = analysis_to_json(r.horizontal);
    j["vertical"] = analysis_to_json(r.vertical);
    j["metrics"]["delta_hurst"] = r.metrics.delta_hurst;
    j["metrics"]["delta_width"] = r.metrics.delta_width;
    j["metrics"]["energy_l1"] = r.metrics.energy_l1;
    j["thresholds"]["hurst"] = r.config.thresholds.hurst;
    j["thresholds"]["width"] = r.config.thresholds.width;
    j["thresholds"]["energy"] = r.config.thresholds.energy;
    j["verdict"] = to_string(r.verdict);
    return j;
}

inline std::string serialize_report_json(const HeterogeneityReport& r) {
    return report_to_json(r).dump(2) + "\n";
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace detail

/// CSV bundle: one file per result family, UTF-8, LF endings, header row,
/// '.' decimal separator.
inline void serialize_report_csv(const HeterogeneityReport& r,
                                 const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);

    const UnfoldAnalysis* dirs[2] = {&r.horizontal, &r.vertical};

    std::string s = "direction,level,energy\n";
    for (const auto* a : dirs)
        for (std::size_t j = 0; j < a->energy.detail_energy.size(); ++j)
            s += std::string(to_string(a->direction)) + "," + std::to_string(j + 1) + "," +
                 fmt_double(a->energy.detail_energy[j]) + "\n";
    detail::write_file(dir / "energy.csv", s);

    s = "direction,scale,log10_mean_power\n";
    for (const auto* a : dirs)
        for (const auto& [scale, lp] : a->scale_profile.points)
            s += std::string(to_string(a->direction)) + "," + fmt_double(scale) + "," +
                 fmt_double(lp) + "\n";
    detail::write_file(dir / "scalogram.csv", s);

    s = "direction,q,s,Fq\n";
    for (const auto* a : dirs)
        for (const auto& row : a->fluctuations.rows)
            s += std::string(to_string(a->direction)) + "," + fmt_double(row.q) + "," +
                 std::to_string(row.s) + "," + fmt_double(row.fq) + "\n";
    detail::write_file(dir / "fluctuation.csv", s);

    s = "direction,q,h,stderr,r2\n";
    for (const auto* a : dirs)
        for (const auto& e : a->hurst.entries)
            s += std::string(to_string(a->direction)) + "," + fmt_double(e.q) + "," +
                 fmt_double(e.h) + "," + fmt_double(e.stderr_) + "," + fmt_double(e.r2) + "\n";
    detail::write_file(dir / "hurst.csv", s);

    s = "direction,q,alpha,f_alpha\n";
    for (const auto* a : dirs)
        for (std::size_t i = 0; i < a->spectrum.points.size(); ++i)
            s += std::string(to_string(a->direction)) + "," +
                 fmt_double(a->hurst.entries[i].q) + "," +
                 fmt_double(a->spectrum.points[i].first) + "," +
                 fmt_double(a->spectrum.points[i].second) + "\n";
    detail::write_file(dir / "spectrum.csv", s);

    s = "metric,value,threshold\n";
    s += "delta_hurst," + fmt_double(r.metrics.delta_hurst) + "," +
         fmt_double(r.config.thresholds.hurst) + "\n";
    s += "delta_width," + fmt_double(r.metrics.delta_width) + "," +
         fmt_double(r.config.thresholds.width) + "\n";
    s += "energy_l1," + fmt_double(r.metrics.energy_l1) + "," +
         fmt_double(r.config.thresholds.energy) + "\n";
    s += std::string("verdict,") + to_string(r.verdict) + ",\n";
    detail::write_file(dir / "metrics.csv", s);
}

}  // namespace hetero

#endif  // HETERO_REPORT_HPP
