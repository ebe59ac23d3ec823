#pragma once

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <utility>

namespace scl {

/// Integer noise range produced by rounding (half up) a value perturbed
/// uniformly within [-bound, bound). For integer bounds this is exactly
/// [-bound, bound]; a bound of 1.5 yields [-1, 1].
inline std::pair<std::int64_t, std::int64_t> integer_noise_range(double bound) {
    if (bound <= 0) return {0, 0};
    const auto lo = static_cast<std::int64_t>(std::floor(-bound + 0.5));
    const auto hi = static_cast<std::int64_t>(std::ceil(bound + 0.5)) - 1;
    return {lo, hi};
}

/// Largest deviation an observation can show from ground truth.
inline double max_observed_deviation(double bound) {
    const auto [lo, hi] = integer_noise_range(bound);
    return std::max({bound, static_cast<double>(-lo), static_cast<double>(hi)});
}

}  // namespace scl
