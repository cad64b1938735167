#pragma once

#include "salgraph/graph.hpp"

namespace salgraph {

/// Affinity-weighted spatial scatter of the colour mass similar to each
/// superpixel. High values indicate background.
struct DivergenceScores {
  NodeScores divC;  ///< scatter around the weighted mean position
  NodeScores divM;  ///< scatter around the image centre
  NodeScores div;   ///< minmax(divC + divM)
};

DivergenceScores divergence(const Matrix& A, const SuperpixelMap& sp);

/// Per-side removal thresholds. Bottom is the mean divergence; top is a third
/// of it and left/right are twice the top value.
struct BorderThresholds {
  double top = 0.0;
  double bottom = 0.0;
  double left = 0.0;
  double right = 0.0;

  static BorderThresholds fromBottom(double bottom);
  /// Largest threshold over the sides in `sides` (0 when none).
  double forSides(std::uint8_t sides) const;
};

BorderThresholds borderThresholds(const NodeScores& div);

/// All superpixels touching the image border.
SeedSet allBorderSeeds(const SuperpixelMap& sp);

/// Border superpixels whose divergence reaches their side's threshold. Falls
/// back to the full border set when every candidate is removed.
SeedSet selectBackgroundSeeds(const NodeScores& div, const SuperpixelMap& sp);
SeedSet selectBackgroundSeeds(const NodeScores& div, const SuperpixelMap& sp,
                              const BorderThresholds& thresholds);

/// Normalized geodesic cost to the virtual background node; seeds are 0.
NodeScores backgroundSaliency(const SaliencyGraph& graph);

}  // namespace salgraph
