// SPDX-License-Identifier: Apache-2.0

#ifndef HETERO_CSV_HPP
#define HETERO_CSV_HPP

#include <charconv>
#include <string>
#include <string_view>

#include "hetero/errors.hpp"
#include "hetero/series.hpp"

namespace hetero {

/// Single-column numeric CSV, optional non-numeric header on line 1.
inline SpatialSeries parse_series_csv(std::string_view bytes) {
    SpatialSeries s;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        std::size_t eol = bytes.find('\n', pos);
        if (eol == std::string_view::npos) eol = bytes.size();
        std::string_view line = bytes.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        // trim spaces
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        if (line.empty()) continue;

        double v;
        auto res = std::from_chars(line.data(), line.data() + line.size(), v);
        if (res.ec != std::errc{} || res.ptr != line.data() + line.size()) {
            if (line_no == 1) continue;  // header
            throw ParseError("not a number at line " + std::to_string(line_no) + ": '" +
                             std::string(line) + "'");
        }
        if (!std::isfinite(v))
            throw ParseError("non-finite value at line " + std::to_string(line_no));
        s.values.push_back(v);
    }
    return s;
}

inline std::string series_to_csv(const SpatialSeries& s) {
    std::string out = "value\n";
    for (double v : s.values) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        out.append(buf, res.ptr);
        out.push_back('\n');
    }
    return out;
}

}  // namespace hetero

#endif  // HETERO_CSV_HPP
