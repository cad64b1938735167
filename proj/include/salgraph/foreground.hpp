#pragma once

#include <cstdint>
#include <vector>

#include "salgraph/graph.hpp"

namespace salgraph {

/// Commonness score: affinity mass to spatial neighbours plus affinity mass to
/// superpixels closer than `phi` in normalized colour, min-max normalized.
/// Low values mark rare superpixels.
NodeScores rarity(const Matrix& A, const Matrix& dC, const SuperpixelMap& sp, double phi);

struct PairTerm {
  int i = 0;
  int j = 0;
  double weight = 0.0;
};

/// E(fg) = sum_i unary_i * fg_i + sum_(i,j) weight_ij * [fg_i != fg_j], weights >= 0.
struct BinaryEnergy {
  std::vector<double> unary;
  std::vector<PairTerm> pairwise;

  double evaluate(const std::vector<std::uint8_t>& fg) const;
};

struct Labeling {
  std::vector<std::uint8_t> fg;
  double energy = 0.0;
};

/// Exact minimizer via s-t min-cut. Among minimizers the smallest foreground
/// set is returned.
Labeling minimizeEnergy(const BinaryEnergy& energy);

/// Descending eta grid. Offsets from `max` grow geometrically so the grid is
/// dense near `max` and reaches `min` at the last step.
struct EtaSweep {
  double max = 4.0;
  double min = -16.0;
  int steps = 32;

  std::vector<double> values() const;
};

struct ForegroundParams {
  EtaSweep sweep;
  double maxAreaFraction = 0.6;
  double epsilon = 1e-6;
};

/// Region energy at one eta: unary -ln S_i + eta * area_i + rare_i, Potts
/// pairwise A(i,j) on adjacent pairs. area_i is measured in units of the mean
/// superpixel area.
BinaryEnergy foregroundEnergy(const NodeScores& conBp, const NodeScores& rare, const Matrix& A,
                              const SuperpixelMap& sp, double eta, double epsilon);

struct SweepStep {
  double eta = 0.0;
  std::vector<int> members;
  double areaFraction = 0.0;
  double energy = 0.0;
};

std::vector<SweepStep> sweepForeground(const NodeScores& conBp, const NodeScores& rare,
                                       const Matrix& A, const SuperpixelMap& sp,
                                       const ForegroundParams& params);

struct ForegroundRegion {
  std::vector<int> members;
  double etaUsed = 0.0;  ///< NaN when the Otsu fallback was used
  bool fallback = false;

  SeedSet asSeeds() const { return {SeedRole::Foreground, members}; }
};

/// Picks the sweep minimizer at the largest eta that is non-empty and covers at
/// most maxAreaFraction of the image; otherwise thresholds conBp at its Otsu level.
ForegroundRegion extractForeground(const NodeScores& conBp, const NodeScores& rare,
                                   const Matrix& A, const SuperpixelMap& sp,
                                   const ForegroundParams& params = {});

/// Superpixels whose conBp bin reaches the Otsu threshold.
std::vector<int> otsuRegion(const NodeScores& conBp);

/// 1 - normalized geodesic cost to the virtual foreground node; seeds are 1.
NodeScores foregroundSaliency(const SaliencyGraph& graph);

}  // namespace salgraph
