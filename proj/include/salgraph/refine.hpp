#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "salgraph/affinity.hpp"
#include "salgraph/otsu.hpp"

namespace salgraph {

/// conBp * (1 - exp(-kappa * conFp)) before normalization.
NodeScores integrateRaw(const NodeScores& conBp, const NodeScores& conFp, double kappa);
/// integrateRaw followed by min-max normalization.
NodeScores integrate(const NodeScores& conBp, const NodeScores& conFp, double kappa);

/// Diagonal of I_f: 1 for active nodes that spread saliency, 0 for suppressed ones.
struct NodeGate {
  std::vector<std::uint8_t> delta;

  static NodeGate allActive(int n) { return {std::vector<std::uint8_t>(n, 1)}; }
  int activeCount() const;
};

/// Active set = top two-level-Otsu class of sCom, united with the top class of
/// objectness when given. An empty union activates everything.
NodeGate gateNodes(const NodeScores& sCom, const std::optional<NodeScores>& objectness = std::nullopt);

/// Deterministic agglomerative merging of adjacent superpixels by mean colour.
/// Merges the closest adjacent pair (ties: lowest cluster ids) while its
/// distance, scaled like the colour-distance matrix, is below tauC.
/// Returns a cluster id per superpixel; ids are the lowest member index.
std::vector<int> midlevelClusters(const SuperpixelMap& sp, double tauC);

/// P = W + Q: W keeps A on adjacent pairs, Q is 1 for same-cluster pairs (and the diagonal).
Matrix midlevelAffinity(const SuperpixelMap& sp, const Matrix& A, std::span<const int> clusters);

enum class Laplacian { Normalized, Unnormalized };

/// Raw ranking scores. Unnormalized: solves (D - alpha P I_f) f = y.
/// Normalized: solves (I - alpha D^-1/2 P D^-1/2 I_f) f = y. alpha = 1/(1+mu).
/// Throws std::runtime_error("EMR solve failed") if the residual exceeds 1e-8.
NodeScores emrRank(const Matrix& P, const NodeGate& gate, const NodeScores& y, double mu,
                   Laplacian laplacian = Laplacian::Unnormalized);

/// Min-max normalized emrRank.
NodeScores emrSolve(const Matrix& P, const NodeGate& gate, const NodeScores& y, double mu,
                    Laplacian laplacian = Laplacian::Unnormalized);

/// The system matrix that emrRank solves against, as a dense matrix.
Matrix emrSystem(const Matrix& P, const NodeGate& gate, double mu, Laplacian laplacian);

/// Per-pixel round(255 * f[label]).
GrayImage renderSaliency(const NodeScores& f, const LabelMap& labels);

/// Mean of an 8-bit per-pixel map over each superpixel, scaled to [0,1].
NodeScores superpixelMeans(const GrayImage& map, const LabelMap& labels, int count);

}  // namespace salgraph
