#pragma once

#include <Eigen/Dense>

#include "salgraph/image.hpp"
#include "salgraph/superpixels.hpp"

namespace salgraph {

using Matrix = Eigen::MatrixXd;
/// One scalar per superpixel.
using NodeScores = Eigen::VectorXd;

/// (v - min) / (max - min); a constant input maps to zeros.
NodeScores minMaxNormalize(const NodeScores& v);
Matrix minMaxNormalize(const Matrix& m);

/// Lab Euclidean distance between superpixel means, min-max normalized over all entries.
Matrix colorDistance(const SuperpixelMap& sp);

/// Wrap-around spatial distance on normalized centroids, scaled by 1/sqrt(2) into [0,1].
Matrix sineSpatialDistance(const SuperpixelMap& sp);
double sineSpatialDistance(double x1, double y1, double x2, double y2);

/// Maximum edge probability along the Bresenham line joining two centroids.
/// Pairs of border superpixels use beta * dC + (1 - beta) * dS instead.
Matrix interveningContour(const SuperpixelMap& sp, const EdgeMap& edges, const Matrix& dC,
                          const Matrix& dS, double beta);

/// Max of edges over the Bresenham line between two pixels (endpoints included).
double maxAlongLine(const EdgeMap& edges, int x0, int y0, int x1, int y1);

/// exp(-(dC + dS + dEdge) / (2 sigma^2)).
Matrix affinity(const Matrix& dC, const Matrix& dS, const Matrix& dEdge, double sigmaW);

enum class EdgeWeightMode { Color, ColorSpatial, Full };

struct AffinityMatrix {
  Matrix A;
  Matrix dC;
  Matrix dS;
  Matrix dEdge;
};

/// All component distances plus the combined affinity. Components disabled by
/// `mode` are reported as zero matrices and do not enter A.
AffinityMatrix computeAffinity(const SuperpixelMap& sp, const EdgeMap& edges, double sigmaW,
                               double beta, EdgeWeightMode mode = EdgeWeightMode::Full);

}  // namespace salgraph
