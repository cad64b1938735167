#include "salgraph/otsu.hpp"

#include <algorithm>
#include <cmath>

namespace salgraph {
namespace {

// Returns the only occupied bin, or -1.
int singleOccupiedBin(const Histogram& h) {
  int found = -1;
  for (int k = 0; k < kHistogramBins; ++k) {
    if (h[k] == 0) continue;
    if (found >= 0) return -1;
    found = k;
  }
  return found;
}

struct Prefix {
  std::array<std::int64_t, kHistogramBins + 1> count{};
  std::array<std::int64_t, kHistogramBins + 1> moment{};

  explicit Prefix(const Histogram& h) {
    for (int k = 0; k < kHistogramBins; ++k) {
      count[k + 1] = count[k] + h[k];
      moment[k + 1] = moment[k] + h[k] * k;
    }
  }
};

}  // namespace

int quantize(double v) {
  return static_cast<int>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
}

Histogram histogram(const NodeScores& values) {
  Histogram h{};
  for (Eigen::Index i = 0; i < values.size(); ++i) ++h[quantize(values[i])];
  return h;
}

double classSeparation(std::span<const std::int64_t> counts, std::span<const std::int64_t> moments) {
  double s = 0.0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) continue;
    const double m = static_cast<double>(moments[c]);
    s += m * m / static_cast<double>(counts[c]);
  }
  return s;
}

int otsuThreshold(const Histogram& h) {
  if (const int only = singleOccupiedBin(h); only >= 0) return only;
  const Prefix p(h);
  const std::int64_t n = p.count[kHistogramBins], m = p.moment[kHistogramBins];
  int best = 1;
  double bestScore = -1.0;
  for (int k = 1; k < kHistogramBins; ++k) {
    const std::array<std::int64_t, 2> counts{p.count[k], n - p.count[k]};
    const std::array<std::int64_t, 2> moments{p.moment[k], m - p.moment[k]};
    const double score = classSeparation(counts, moments);
    if (score > bestScore) {
      bestScore = score;
      best = k;
    }
  }
  return best;
}

ThresholdPair twoLevelOtsu(const Histogram& h) {
  if (const int only = singleOccupiedBin(h); only >= 0) return {only, only};
  const Prefix p(h);
  const std::int64_t n = p.count[kHistogramBins], m = p.moment[kHistogramBins];
  ThresholdPair best{1, 2};
  double bestScore = -1.0;
  for (int lo = 1; lo < kHistogramBins - 1; ++lo) {
    for (int hi = lo + 1; hi < kHistogramBins; ++hi) {
      const std::array<std::int64_t, 3> counts{p.count[lo], p.count[hi] - p.count[lo],
                                               n - p.count[hi]};
      const std::array<std::int64_t, 3> moments{p.moment[lo], p.moment[hi] - p.moment[lo],
                                                m - p.moment[hi]};
      const double score = classSeparation(counts, moments);
      if (score > bestScore) {
        bestScore = score;
        best = {lo, hi};
      }
    }
  }
  return best;
}

ThresholdPair twoLevelOtsu(const NodeScores& values) { return twoLevelOtsu(histogram(values)); }

}  // namespace salgraph
