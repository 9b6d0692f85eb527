// SPDX-License-Identifier: Apache-2.0

#ifndef HETERO_SERIES_HPP
#define HETERO_SERIES_HPP

#include <cmath>
#include <string>
#include <vector>

#include "hetero/errors.hpp"

namespace hetero {

/// 1-D real-valued sequence produced by unfolding an image (or read from CSV).
struct SpatialSeries {
    std::vector<double> values;
    std::string provenance;  // source file + direction, free text

    std::size_t size() const { return values.size(); }
};

/// Minimum series length for the level-5 DWT and the MFDFA scale grid.
inline constexpr std::size_t kMinSeriesLength = 64;

inline void validate_series(const SpatialSeries& s) {
    if (s.values.size() < kMinSeriesLength)
        throw TooShort("series too short: " + std::to_string(s.values.size()) +
                       " < " + std::to_string(kMinSeriesLength));
    for (double v : s.values)
        if (!std::isfinite(v)) throw InputError("series contains non-finite value");
}

}  // namespace hetero

#endif  // HETERO_SERIES_HPP
