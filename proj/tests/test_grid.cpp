// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hetero/grid.hpp"

using namespace hetero;

TEST_CASE("P2 ascii parse") {
    ImageGrid g = load_pgm("P2 2 2 255 0 255 128 64");
    CHECK(g.rows == 2);
    CHECK(g.cols == 2);
    CHECK(g.max_value == 255);
    CHECK(g.pixels == std::vector<int>{0, 255, 128, 64});
}

TEST_CASE("P2 with comments and newlines") {
    ImageGrid g = load_pgm("P2\n# a comment\n2 2\n# another\n255\n0 255\n128 64\n");
    CHECK(g.pixels == std::vector<int>{0, 255, 128, 64});
}

TEST_CASE("bad magic") {
    CHECK_THROWS_AS(load_pgm("P7 2 2 255 0 0 0 0"), BadMagic);
    CHECK_THROWS_AS(load_pgm(""), BadMagic);
}

TEST_CASE("truncated data") {
    CHECK_THROWS_AS(load_pgm("P2 2 2 255 0 255 128"), TruncatedData);
}

TEST_CASE("range errors") {
    CHECK_THROWS_AS(load_pgm("P2 2 2 255 0 256 0 0"), RangeError);
    CHECK_THROWS_AS(load_pgm("P2 2 2 0 0 0 0 0"), RangeError);
    CHECK_THROWS_AS(load_pgm("P2 2 2 70000 0 0 0 0"), RangeError);
}

TEST_CASE("P5 binary 8-bit") {
    std::string raw = "P5\n2 2\n255\n";
    raw += '\x00';
    raw += '\xff';
    raw += '\x80';
    raw += '\x40';
    ImageGrid g = load_pgm(raw);
    CHECK(g.pixels == std::vector<int>{0, 255, 128, 64});
}

TEST_CASE("P5 binary 16-bit big-endian") {
    std::string raw = "P5\n2 1\n65535\n";
    raw += '\x01';  // 0x0102 = 258
    raw += '\x02';
    raw += '\xff';
    raw += '\xfe';  // 0xfffe = 65534
    ImageGrid g = load_pgm(raw);
    CHECK(g.pixels == std::vector<int>{258, 65534});
}

TEST_CASE("round trip P5 and P2") {
    std::mt19937 rng(42);
    ImageGrid g;
    g.rows = 9;
    g.cols = 13;
    g.max_value = 65535;
    for (std::size_t i = 0; i < g.rows * g.cols; ++i)
        g.pixels.push_back(static_cast<int>(rng() % 65536));

    ImageGrid back5 = load_pgm(serialize_pgm(g));
    CHECK(back5.rows == g.rows);
    CHECK(back5.cols == g.cols);
    CHECK(back5.pixels == g.pixels);

    ImageGrid back2 = load_pgm(serialize_pgm_ascii(g));
    CHECK(back2.pixels == g.pixels);
}

TEST_CASE("unfold directions") {
    ImageGrid g;
    g.rows = g.cols = 8;  // 64 pixels, minimum size
    g.max_value = 255;
    for (int i = 0; i < 64; ++i) g.pixels.push_back(i);

    SpatialSeries h = unfold(g, UnfoldDirection::Horizontal);
    SpatialSeries v = unfold(g, UnfoldDirection::Vertical);
    CHECK(h.values[0] == 0);
    CHECK(h.values[1] == 1);
    CHECK(h.values[8] == 8);
    CHECK(v.values[0] == 0);
    CHECK(v.values[1] == 8);  // down the first column
    CHECK(v.values[8] == 1);
    CHECK(h.values.size() == 64);
    CHECK(v.values.size() == 64);
}

TEST_CASE("too small to unfold") {
    ImageGrid g;
    g.rows = g.cols = 7;  // 49 < 64
    g.max_value = 255;
    g.pixels.assign(49, 0);
    CHECK_THROWS_AS(unfold(g, UnfoldDirection::Horizontal), TooSmall);
}

TEST_CASE("single-row image unfolds identically both ways") {
    ImageGrid g;
    g.rows = 1;
    g.cols = 64;
    g.max_value = 255;
    for (int i = 0; i < 64; ++i) g.pixels.push_back((i * 37) % 256);
    CHECK(unfold(g, UnfoldDirection::Horizontal).values ==
          unfold(g, UnfoldDirection::Vertical).values);
}

TEST_CASE("vertical unfold equals horizontal unfold of the transpose") {
    std::mt19937 rng(7);
    ImageGrid g;
    g.rows = 8;
    g.cols = 16;
    g.max_value = 255;
    for (std::size_t i = 0; i < g.rows * g.cols; ++i)
        g.pixels.push_back(static_cast<int>(rng() % 256));

    ImageGrid t;
    t.rows = g.cols;
    t.cols = g.rows;
    t.max_value = g.max_value;
    t.pixels.resize(g.pixels.size());
    for (std::size_t r = 0; r < g.rows; ++r)
        for (std::size_t c = 0; c < g.cols; ++c)
            t.pixels[c * t.cols + r] = g.at(r, c);

    CHECK(unfold(g, UnfoldDirection::Vertical).values ==
          unfold(t, UnfoldDirection::Horizontal).values);
}

TEST_CASE("unfolding preserves the pixel multiset") {
    std::mt19937 rng(11);
    ImageGrid g;
    g.rows = 12;
    g.cols = 10;
    g.max_value = 255;
    for (std::size_t i = 0; i < g.rows * g.cols; ++i)
        g.pixels.push_back(static_cast<int>(rng() % 256));

    auto as_sorted = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    std::vector<double> px(g.pixels.begin(), g.pixels.end());
    std::sort(px.begin(), px.end());
    CHECK(as_sorted(unfold(g, UnfoldDirection::Horizontal).values) == px);
    CHECK(as_sorted(unfold(g, UnfoldDirection::Vertical).values) == px);
}
