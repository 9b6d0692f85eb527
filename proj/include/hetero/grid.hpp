// SPDX-License-Identifier: Apache-2.0
//
// Grayscale image grid: PGM (P2/P5) ingestion and unfolding into 1-D series.

#ifndef HETERO_GRID_HPP
#define HETERO_GRID_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hetero/errors.hpp"
#include "hetero/series.hpp"

namespace hetero {

enum class UnfoldDirection { Horizontal, Vertical };

inline const char* to_string(UnfoldDirection d) {
    return d == UnfoldDirection::Horizontal ? "horizontal" : "vertical";
}

/// Rectangular grayscale raster, row-major pixel storage.
struct ImageGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    int max_value = 0;  // in [1, 65535]
    std::vector<int> pixels;  // rows*cols values, each in [0, max_value]

    int at(std::size_t r, std::size_t c) const { return pixels[r * cols + c]; }
};

namespace detail {

// Skips whitespace and '#' comment lines (comments run to end of line).
inline void skip_pgm_separators(std::string_view bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        unsigned char c = bytes[pos];
        if (c == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(c)) {
            ++pos;
        } else {
            break;
        }
    }
}

inline long read_pgm_int(std::string_view bytes, std::size_t& pos, const char* what) {
    skip_pgm_separators(bytes, pos);
    if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos])))
        throw TruncatedData(std::string("pgm: expected ") + what);
    long v = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
        v = v * 10 + (bytes[pos] - '0');
        if (v > 1L << 30) throw RangeError(std::string("pgm: ") + what + " out of range");
        ++pos;
    }
    return v;
}

}  // namespace detail

/// Parses a PGM image (ASCII "P2" or binary "P5"; 16-bit P5 samples are
/// big-endian). Header comments beginning with '#' are allowed.
inline ImageGrid load_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw BadMagic("pgm: magic must be P2 or P5");
    const bool binary = bytes[1] == '5';
    std::size_t pos = 2;

    ImageGrid g;
    long cols = detail::read_pgm_int(bytes, pos, "width");
    long rows = detail::read_pgm_int(bytes, pos, "height");
    long maxv = detail::read_pgm_int(bytes, pos, "maxval");
    if (cols < 1 || rows < 1) throw RangeError("pgm: non-positive dimensions");
    if (maxv < 1 || maxv > 65535) throw RangeError("pgm: maxval must be in [1, 65535]");
    g.rows = static_cast<std::size_t>(rows);
    g.cols = static_cast<std::size_t>(cols);
    g.max_value = static_cast<int>(maxv);

    const std::size_t n = g.rows * g.cols;
    g.pixels.reserve(n);

    if (binary) {
        // Exactly one whitespace byte separates maxval from raster data.
        if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
            throw TruncatedData("pgm: missing raster data");
        ++pos;
        const int bytes_per = maxv > 255 ? 2 : 1;
        if (bytes.size() - pos < n * bytes_per) throw TruncatedData("pgm: raster truncated");
        for (std::size_t i = 0; i < n; ++i) {
            int v;
            if (bytes_per == 2) {
                v = (static_cast<unsigned char>(bytes[pos]) << 8) |
                    static_cast<unsigned char>(bytes[pos + 1]);
                pos += 2;
            } else {
                v = static_cast<unsigned char>(bytes[pos++]);
            }
            if (v > g.max_value) throw RangeError("pgm: sample exceeds maxval");
            g.pixels.push_back(v);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            long v = detail::read_pgm_int(bytes, pos, "sample");
            if (v > g.max_value) throw RangeError("pgm: sample exceeds maxval");
            g.pixels.push_back(static_cast<int>(v));
        }
    }
    return g;
}

/// Serializes to binary P5 (big-endian 16-bit when max_value > 255).
inline std::string serialize_pgm(const ImageGrid& g) {
    std::string out = "P5\n" + std::to_string(g.cols) + " " + std::to_string(g.rows) +
                      "\n" + std::to_string(g.max_value) + "\n";
    if (g.max_value > 255) {
        for (int v : g.pixels) {
            out.push_back(static_cast<char>((v >> 8) & 0xff));
            out.push_back(static_cast<char>(v & 0xff));
        }
    } else {
        for (int v : g.pixels) out.push_back(static_cast<char>(v & 0xff));
    }
    return out;
}

/// Serializes to ASCII P2.
inline std::string serialize_pgm_ascii(const ImageGrid& g) {
    std::string out = "P2\n" + std::to_string(g.cols) + " " + std::to_string(g.rows) +
                      "\n" + std::to_string(g.max_value) + "\n";
    for (std::size_t r = 0; r < g.rows; ++r) {
        for (std::size_t c = 0; c < g.cols; ++c) {
            if (c) out.push_back(' ');
            out += std::to_string(g.at(r, c));
        }
        out.push_back('\n');
    }
    return out;
}

/// Unfolds the grid into a 1-D spatial series: Horizontal is a row-major
/// raster scan, Vertical a column-major one.
inline SpatialSeries unfold(const ImageGrid& g, UnfoldDirection dir) {
    const std::size_t n = g.rows * g.cols;
    if (n < kMinSeriesLength)
        throw TooSmall("image too small to unfold: " + std::to_string(n) + " pixels");
    SpatialSeries s;
    s.values.reserve(n);
    if (dir == UnfoldDirection::Horizontal) {
        for (int v : g.pixels) s.values.push_back(static_cast<double>(v));
    } else {
        for (std::size_t c = 0; c < g.cols; ++c)
            for (std::size_t r = 0; r < g.rows; ++r)
                s.values.push_back(static_cast<double>(g.at(r, c)));
    }
    s.provenance = std::string(to_string(dir)) + " unfolding";
    return s;
}

}  // namespace hetero

#endif  // HETERO_GRID_HPP
