#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "salgraph/affinity.hpp"

namespace salgraph {

inline constexpr int kHistogramBins = 256;
using Histogram = std::array<std::int64_t, kHistogramBins>;

/// Bin of a [0,1] value: round(255 * clamp(v, 0, 1)).
int quantize(double v);
Histogram histogram(const NodeScores& values);

/// Between-class separation sum_c S_c^2 / n_c for classes with counts n_c and
/// first moments S_c (empty classes contribute 0). Maximizing it maximizes the
/// between-class variance.
double classSeparation(std::span<const std::int64_t> counts, std::span<const std::int64_t> moments);

/// Single threshold bin k: the upper class is bins >= k.
int otsuThreshold(const Histogram& h);

/// Upper classes start at bins `low` and `high`: classes are [0,low), [low,high), [high,255].
struct ThresholdPair {
  int low = 0;
  int high = 0;
  double lowValue() const { return low / 255.0; }
  double highValue() const { return high / 255.0; }
  bool operator==(const ThresholdPair&) const = default;
};

/// Two-level Otsu. Ties go to the lexicographically smallest pair. When all
/// mass sits in one bin both thresholds equal that bin.
ThresholdPair twoLevelOtsu(const Histogram& h);
ThresholdPair twoLevelOtsu(const NodeScores& values);

}  // namespace salgraph
