// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "hetero/report.hpp"
#include "hetero/synth.hpp"

using namespace hetero;

namespace {

ImageGrid random_image(std::size_t side, unsigned seed) {
    std::mt19937 rng(seed);
    ImageGrid g;
    g.rows = g.cols = side;
    g.max_value = 255;
    for (std::size_t i = 0; i < side * side; ++i)
        g.pixels.push_back(static_cast<int>(rng() % 256));
    return g;
}

ImageGrid symmetric_image(std::size_t side, unsigned seed) {
    ImageGrid g = random_image(side, seed);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = r + 1; c < side; ++c)
            g.pixels[c * side + r] = g.at(r, c);
    return g;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("symmetric image: identical unfoldings, zero metrics, NotDistinguished") {
    auto g = symmetric_image(128, 21);
    auto r = analyze_image(g, AnalysisConfig{});
    CHECK(r.metrics.delta_hurst == 0.0);
    CHECK(r.metrics.delta_width == 0.0);
    CHECK(r.metrics.energy_l1 == 0.0);
    CHECK(r.verdict == Verdict::NotDistinguished);
}

TEST_CASE("compare: arithmetic, boundary rule, config mismatch") {
    UnfoldAnalysis v, h;
    v.direction = UnfoldDirection::Vertical;
    h.direction = UnfoldDirection::Horizontal;
    v.energy.detail_energy = {0.5, 0.3, 0.2};
    h.energy.detail_energy = {0.5, 0.3, 0.2};
    for (double q : {0.0, 1.0, 2.0}) {
        v.hurst.entries.push_back({q, 0.9, 0.0, 1.0});
        h.hurst.entries.push_back({q, 0.5, 0.0, 1.0});
    }
    v.hurst.hurst = 0.9;
    h.hurst.hurst = 0.5;
    v.spectrum.width = 0.2;
    h.spectrum.width = 0.2;

    Thresholds th;
    auto [m, verdict] = compare(v, h, th);
    CHECK(m.delta_hurst == doctest::Approx(0.4));
    CHECK(m.delta_width == 0.0);
    CHECK(m.energy_l1 == 0.0);
    CHECK(verdict == Verdict::Heterogeneous);

    // metrics exactly at threshold: strict inequality, NotDistinguished
    // (binary-exact values so delta == threshold holds without rounding)
    Thresholds th_exact;
    th_exact.hurst = 0.25;
    v.hurst.hurst = 1.0;
    h.hurst.hurst = 0.75;
    auto [m2, verdict2] = compare(v, h, th_exact);
    CHECK(m2.delta_hurst == 0.25);
    CHECK(verdict2 == Verdict::NotDistinguished);
    v.hurst.hurst = 0.9;
    h.hurst.hurst = 0.5;

    UnfoldAnalysis bad = h;
    bad.energy.detail_energy.pop_back();
    CHECK_THROWS_AS(compare(v, bad, th), ConfigMismatch);
    bad = h;
    bad.hurst.entries[1].q = 1.5;
    CHECK_THROWS_AS(compare(v, bad, th), ConfigMismatch);
}

TEST_CASE("identical analyses compare to zero") {
    auto g = random_image(96, 5);
    auto series = unfold(g, UnfoldDirection::Horizontal);
    auto a = detail::analyze_direction(series, UnfoldDirection::Horizontal, AnalysisConfig{});
    auto [m, verdict] = compare(a, a, Thresholds{});
    CHECK(m.delta_hurst == 0.0);
    CHECK(m.delta_width == 0.0);
    CHECK(m.energy_l1 == 0.0);
    CHECK(verdict == Verdict::NotDistinguished);
}

TEST_CASE("JSON round trip is byte-identical and verdict is recomputable") {
    auto g = random_image(128, 33);
    auto r = analyze_image(g, AnalysisConfig{});
    std::string json1 = serialize_report_json(r);
    ordered_json parsed = ordered_json::parse(json1);
    std::string json2 = parsed.dump(2) + "\n";
    CHECK(json1 == json2);

    // recompute the verdict from serialized numbers alone
    double dh = std::abs(parsed["vertical"]["hurst"]["h2"].get<double>() -
                         parsed["horizontal"]["hurst"]["h2"].get<double>());
    double dw = std::abs(parsed["vertical"]["spectrum"]["width"].get<double>() -
                         parsed["horizontal"]["spectrum"]["width"].get<double>());
    double el1 = 0;
    auto ev = parsed["vertical"]["energy"]["detail_energy"];
    auto eh = parsed["horizontal"]["energy"]["detail_energy"];
    for (std::size_t j = 0; j < ev.size(); ++j)
        el1 += std::abs(ev[j].get<double>() - eh[j].get<double>());
    bool het = dh > parsed["thresholds"]["hurst"].get<double>() ||
               dw > parsed["thresholds"]["width"].get<double>() ||
               el1 > parsed["thresholds"]["energy"].get<double>();
    CHECK(parsed["verdict"].get<std::string>() ==
          (het ? "Heterogeneous" : "NotDistinguished"));
    CHECK(dh == doctest::Approx(r.metrics.delta_hurst).epsilon(1e-15));
}

TEST_CASE("determinism: same image and config give byte-identical JSON") {
    auto g = random_image(96, 8);
    std::string a = serialize_report_json(analyze_image(g, AnalysisConfig{}));
    std::string b = serialize_report_json(analyze_image(g, AnalysisConfig{}));
    CHECK(a == b);
}

TEST_CASE("CSV bundle shape") {
    auto g = random_image(96, 13);
    AnalysisConfig cfg;
    auto r = analyze_image(g, cfg);
    auto dir = std::filesystem::temp_directory_path() / "hetero_csv_test";
    serialize_report_csv(r, dir);

    int n_q = static_cast<int>(std::lround((cfg.q_max - cfg.q_min) / cfg.q_step)) + 1;
    std::string hurst = slurp(dir / "hurst.csv");
    CHECK(count_lines(hurst) == 1 + 2 * n_q);  // header + two directions

    std::string energy = slurp(dir / "energy.csv");
    CHECK(count_lines(energy) == 1 + 2 * cfg.levels);

    std::string spectrum = slurp(dir / "spectrum.csv");
    CHECK(count_lines(spectrum) == 1 + 2 * n_q);

    for (const char* name : {"energy.csv", "scalogram.csv", "fluctuation.csv",
                             "hurst.csv", "spectrum.csv", "metrics.csv"}) {
        std::string content = slurp(dir / name);
        CHECK(!content.empty());
        CHECK(content.find('\r') == std::string::npos);  // LF endings only
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("numbers in CSV round-trip exactly") {
    double vals[] = {1.0 / 3.0, 1e-17, 123456.789012345678, -0.1};
    for (double v : vals) {
        std::string s = fmt_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("image digest is stable and content-sensitive") {
    auto g = random_image(96, 55);
    CHECK(image_digest(g) == image_digest(g));
    auto g2 = g;
    g2.pixels[0] ^= 1;
    CHECK(image_digest(g) != image_digest(g2));
    CHECK(image_digest(g).rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("direction failures are wrapped with the direction name") {
    ImageGrid flat;
    flat.rows = flat.cols = 96;
    flat.max_value = 255;
    flat.pixels.assign(96 * 96, 7);
    AnalysisConfig cfg;
    cfg.wavelet = "haar";  // haar details of a constant are exactly zero
    try {
        analyze_image(flat, cfg);
        FAIL("expected DegeneracyError");
    } catch (const DegeneracyError& e) {
        CHECK(std::string(e.what()).find("horizontal") != std::string::npos);
    }
}
