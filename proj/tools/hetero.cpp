// SPDX-License-Identifier: Apache-2.0
//
// hetero: command-line frontend for the image-heterogeneity pipeline.
// Subcommands expose each stage independently: analyze (full PGM pipeline),
// dwt / cwt / mfdfa (single stages on CSV series), synth (oracle series).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hetero/csv.hpp"
#include "hetero/cwt.hpp"
#include "hetero/dwt.hpp"
#include "hetero/errors.hpp"
#include "hetero/grid.hpp"
#include "hetero/mfdfa.hpp"
#include "hetero/report.hpp"
#include "hetero/synth.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hetero::IoError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hetero::IoError("cannot open output file: " + path);
    out << content;
    if (!out) throw hetero::IoError("write failed: " + path);
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file(path, content);
}

struct AnalyzeArgs {
    std::string input, out, format = "json", outdir = "report_csv";
    bool dump_config = false;
    hetero::AnalysisConfig cfg;
};

void add_mfdfa_flags(CLI::App* cmd, hetero::AnalysisConfig& cfg) {
    cmd->add_option("--q-min", cfg.q_min, "Lowest moment order q")->capture_default_str();
    cmd->add_option("--q-max", cfg.q_max, "Highest moment order q")->capture_default_str();
    cmd->add_option("--q-step", cfg.q_step, "Moment order step")->capture_default_str();
    cmd->add_option("--detrend", cfg.detrend_order, "Detrending polynomial order (0..3)")
        ->capture_default_str();
    cmd->add_option("--mfdfa-scales", cfg.mfdfa_scale_count,
                    "Number of MFDFA scales (log-spaced in [16, N/4])")
        ->capture_default_str();
}

int run_analyze(const AnalyzeArgs& a) {
    if (a.dump_config) {
        hetero::ordered_json j = hetero::config_to_json(a.cfg);
        j["thresholds"]["hurst"] = a.cfg.thresholds.hurst;
        j["thresholds"]["width"] = a.cfg.thresholds.width;
        j["thresholds"]["energy"] = a.cfg.thresholds.energy;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    hetero::ImageGrid grid = hetero::load_pgm(read_file(a.input));
    hetero::HeterogeneityReport report = hetero::analyze_image(grid, a.cfg);
    if (a.format == "csv") {
        hetero::serialize_report_csv(report, a.outdir);
    } else {
        emit(a.out, hetero::serialize_report_json(report));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial-heterogeneity analysis of grayscale images via wavelet "
                 "energies, Morlet scale profiles, and MFDFA on horizontal vs "
                 "vertical unfoldings"};
    app.require_subcommand(1);

    // analyze
    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Run the full pipeline on a PGM image");
    analyze->add_option("--input", an.input, "Input PGM (P2 or P5)");
    analyze->add_option("--out", an.out, "Output JSON path ('-' = stdout)")
        ->capture_default_str();
    analyze->add_option("--format", an.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    analyze->add_option("--outdir", an.outdir, "Directory for the CSV bundle")
        ->capture_default_str();
    analyze->add_option("--wavelet", an.cfg.wavelet, "Wavelet basis")
        ->check(CLI::IsMember({"haar", "db2", "db4"}))
        ->capture_default_str();
    analyze->add_option("--levels", an.cfg.levels, "DWT decomposition levels")
        ->capture_default_str();
    analyze->add_option("--omega0", an.cfg.omega0, "Morlet center frequency")
        ->capture_default_str();
    analyze->add_option("--cwt-scales", an.cfg.cwt_scale_count,
                        "Number of CWT scales (log-spaced in [2, N/8])")
        ->capture_default_str();
    add_mfdfa_flags(analyze, an.cfg);
    analyze->add_flag("--raw", an.cfg.raw,
                      "Run CWT/MFDFA on the raw series instead of the DWT fluctuations");
    analyze->add_option("--theta-hurst", an.cfg.thresholds.hurst,
                        "Heterogeneity threshold on |h_v(2) - h_h(2)|")
        ->capture_default_str();
    analyze->add_option("--theta-width", an.cfg.thresholds.width,
                        "Heterogeneity threshold on |dAlpha_v - dAlpha_h|")
        ->capture_default_str();
    analyze->add_option("--theta-energy", an.cfg.thresholds.energy,
                        "Heterogeneity threshold on the L1 energy mismatch")
        ->capture_default_str();
    analyze->add_flag("--dump-config", an.dump_config,
                      "Print the effective configuration as JSON and exit");

    // dwt
    std::string dwt_input, dwt_wavelet = "db4", dwt_energy_out, dwt_denoised_out,
                dwt_residual_out;
    int dwt_levels = 5;
    auto* dwt_cmd = app.add_subcommand("dwt", "Multilevel DWT energy / denoise split on a CSV series");
    dwt_cmd->add_option("--input", dwt_input, "Single-column CSV series")->required();
    dwt_cmd->add_option("--wavelet", dwt_wavelet, "Wavelet basis")
        ->check(CLI::IsMember({"haar", "db2", "db4"}))
        ->capture_default_str();
    dwt_cmd->add_option("--levels", dwt_levels, "Decomposition levels")->capture_default_str();
    dwt_cmd->add_option("--energy-out", dwt_energy_out,
                        "Normalized-energy CSV ('-' = stdout)")->capture_default_str();
    dwt_cmd->add_option("--denoised-out", dwt_denoised_out, "Denoised (trend) series CSV");
    dwt_cmd->add_option("--residual-out", dwt_residual_out, "Fluctuation series CSV");

    // cwt
    std::string cwt_input, cwt_out, cwt_scalogram_out;
    double cwt_omega0 = hetero::kDefaultOmega0;
    std::size_t cwt_scales = 32;
    auto* cwt_cmd = app.add_subcommand("cwt", "Morlet semi-log scale profile of a CSV series");
    cwt_cmd->add_option("--input", cwt_input, "Single-column CSV series")->required();
    cwt_cmd->add_option("--omega0", cwt_omega0, "Morlet center frequency")->capture_default_str();
    cwt_cmd->add_option("--scales", cwt_scales, "Number of scales (log-spaced in [2, N/8])")
        ->capture_default_str();
    cwt_cmd->add_option("--out", cwt_out, "Profile CSV ('-' = stdout)")->capture_default_str();
    cwt_cmd->add_option("--scalogram-out", cwt_scalogram_out, "Full scalogram CSV");

    // mfdfa
    std::string mf_input, mf_outdir;
    hetero::AnalysisConfig mf_cfg;
    auto* mf_cmd = app.add_subcommand("mfdfa", "MFDFA h(q) and singularity spectrum of a CSV series");
    mf_cmd->add_option("--input", mf_input, "Single-column CSV series")->required();
    add_mfdfa_flags(mf_cmd, mf_cfg);
    mf_cmd->add_option("--outdir", mf_outdir,
                       "Directory for fluctuation.csv / hurst.csv / spectrum.csv; "
                       "stdout summary when omitted");

    // synth
    std::string sy_kind, sy_out, sy_pgm;
    double sy_hurst = 0.5, sy_a = 0.6;
    std::size_t sy_length = 16384;
    int sy_levels = 14;
    std::uint64_t sy_seed = 0;
    bool sy_seed_set = false;
    auto* sy_cmd = app.add_subcommand("synth", "Generate oracle series (CSV and/or square PGM)");
    sy_cmd->add_option("--kind", sy_kind, "Generator")
        ->check(CLI::IsMember({"white", "fgn", "cascade"}))
        ->required();
    sy_cmd->add_option("--length", sy_length, "Series length (power of two for fgn)")
        ->capture_default_str();
    sy_cmd->add_option("--hurst", sy_hurst, "Hurst exponent for fgn")->capture_default_str();
    sy_cmd->add_option("--a", sy_a, "Cascade weight in (0,1)")->capture_default_str();
    sy_cmd->add_option("--cascade-levels", sy_levels, "Cascade levels (length = 2^levels)")
        ->capture_default_str();
    auto* seed_opt = sy_cmd->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { sy_seed = v; sy_seed_set = true; },
        "RNG seed (required for white/fgn)");
    sy_cmd->add_option("--out", sy_out, "Series CSV ('-' = stdout)")->capture_default_str();
    sy_cmd->add_option("--pgm", sy_pgm, "Also refold row-major into a square 16-bit PGM");
    (void)seed_opt;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze) {
            if (!an.dump_config && an.input.empty())
                throw hetero::IoError("analyze requires --input");
            return run_analyze(an);
        }

        if (*dwt_cmd) {
            hetero::SpatialSeries s = hetero::parse_series_csv(read_file(dwt_input));
            hetero::validate_series(s);
            hetero::WaveletSpec w = hetero::WaveletSpec::by_name(dwt_wavelet);
            auto decomp = hetero::dwt_forward(s, w, dwt_levels);
            auto energy = hetero::normalized_energy(decomp);
            std::string out = "level,energy\n";
            for (std::size_t j = 0; j < energy.detail_energy.size(); ++j)
                out += std::to_string(j + 1) + "," +
                       hetero::fmt_double(energy.detail_energy[j]) + "\n";
            out += "approx_fraction," + hetero::fmt_double(energy.approx_fraction) + "\n";
            emit(dwt_energy_out, out);
            if (!dwt_denoised_out.empty() || !dwt_residual_out.empty()) {
                auto split = hetero::denoise(s, w, dwt_levels);
                if (!dwt_denoised_out.empty())
                    write_file(dwt_denoised_out, hetero::series_to_csv(split.denoised));
                if (!dwt_residual_out.empty())
                    write_file(dwt_residual_out, hetero::series_to_csv(split.residual));
            }
            return 0;
        }

        if (*cwt_cmd) {
            hetero::SpatialSeries s = hetero::parse_series_csv(read_file(cwt_input));
            hetero::validate_series(s);
            auto sg = hetero::cwt_morlet(s, hetero::default_cwt_scales(s.size(), cwt_scales),
                                         cwt_omega0);
            auto prof = hetero::semilog_profile(sg);
            std::string out = "scale,log10_mean_power\n";
            for (const auto& [scale, lp] : prof.points)
                out += hetero::fmt_double(scale) + "," + hetero::fmt_double(lp) + "\n";
            emit(cwt_out, out);
            if (!cwt_scalogram_out.empty()) {
                std::string sc = "scale,position,power\n";
                for (std::size_t si = 0; si < sg.scales.size(); ++si)
                    for (std::size_t b = 0; b < sg.power[si].size(); ++b)
                        sc += hetero::fmt_double(sg.scales[si]) + "," + std::to_string(b) +
                              "," + hetero::fmt_double(sg.power[si][b]) + "\n";
                write_file(cwt_scalogram_out, sc);
            }
            return 0;
        }

        if (*mf_cmd) {
            hetero::SpatialSeries s = hetero::parse_series_csv(read_file(mf_input));
            hetero::validate_series(s);
            hetero::MfdfaConfig mc;
            mc.scales = hetero::default_mfdfa_scales(s.size(), mf_cfg.mfdfa_scale_count);
            mc.q_grid = hetero::make_q_grid(mf_cfg.q_min, mf_cfg.q_max, mf_cfg.q_step);
            mc.detrend_order = mf_cfg.detrend_order;
            hetero::MfdfaResult r = hetero::mfdfa_analyze(s, mc);
            if (mf_outdir.empty()) {
                std::cout << "h(2) = " << hetero::fmt_double(r.hurst.hurst)
                          << "\nwidth = " << hetero::fmt_double(r.spectrum.width) << "\n";
            } else {
                std::filesystem::create_directories(mf_outdir);
                std::string fl = "q,s,Fq\n";
                for (const auto& row : r.table.rows)
                    fl += hetero::fmt_double(row.q) + "," + std::to_string(row.s) + "," +
                          hetero::fmt_double(row.fq) + "\n";
                write_file((std::filesystem::path(mf_outdir) / "fluctuation.csv").string(), fl);
                std::string hu = "q,h,stderr,r2\n";
                for (const auto& e : r.hurst.entries)
                    hu += hetero::fmt_double(e.q) + "," + hetero::fmt_double(e.h) + "," +
                          hetero::fmt_double(e.stderr_) + "," + hetero::fmt_double(e.r2) + "\n";
                write_file((std::filesystem::path(mf_outdir) / "hurst.csv").string(), hu);
                std::string sp = "q,alpha,f_alpha\n";
                for (std::size_t i = 0; i < r.spectrum.points.size(); ++i)
                    sp += hetero::fmt_double(r.hurst.entries[i].q) + "," +
                          hetero::fmt_double(r.spectrum.points[i].first) + "," +
                          hetero::fmt_double(r.spectrum.points[i].second) + "\n";
                write_file((std::filesystem::path(mf_outdir) / "spectrum.csv").string(), sp);
            }
            return 0;
        }

        if (*sy_cmd) {
            hetero::SpatialSeries s;
            if (sy_kind == "white") {
                if (!sy_seed_set) throw hetero::BadParam("synth white requires --seed");
                s = hetero::gen_white_noise(sy_length, sy_seed);
            } else if (sy_kind == "fgn") {
                if (!sy_seed_set) throw hetero::BadParam("synth fgn requires --seed");
                s = hetero::gen_fgn(sy_hurst, sy_length, sy_seed);
            } else {
                s = hetero::gen_binomial_cascade(sy_a, sy_levels);
            }
            emit(sy_out, hetero::series_to_csv(s));
            if (!sy_pgm.empty()) {
                std::size_t side = static_cast<std::size_t>(std::sqrt(double(s.size())));
                if (side * side != s.size())
                    throw hetero::BadParam("series length is not a perfect square; "
                                           "cannot refold to PGM");
                double lo = s.values[0], hi = s.values[0];
                for (double v : s.values) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                double span = hi > lo ? hi - lo : 1.0;
                hetero::ImageGrid g;
                g.rows = g.cols = side;
                g.max_value = 65535;
                g.pixels.reserve(s.size());
                for (double v : s.values)
                    g.pixels.push_back(
                        static_cast<int>(std::lround((v - lo) / span * 65535.0)));
                write_file(sy_pgm, hetero::serialize_pgm(g));
            }
            return 0;
        }
    } catch (const hetero::DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hetero::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hetero::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
