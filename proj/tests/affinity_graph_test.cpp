#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "salgraph/affinity.hpp"
#include "salgraph/graph.hpp"
#include "support.hpp"

namespace salgraph {
namespace {

// 4x3 blocks of 10x10 pixels; labels row-major, so 5 and 6 are the interior pair.
LabelMap blocks4x3() {
  LabelMap labels(40, 30);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 40; ++x) labels(x, y) = (y / 10) * 4 + x / 10;
  return labels;
}

TEST(ColorDistance, UniformIsZero) {
  const SuperpixelMap sp = testing::mapFromLabels(testing::stripes(30, 20, 3), std::vector<Lab>(3, Lab{40, 5, 5}));
  EXPECT_TRUE(colorDistance(sp).isZero(0.0));
}

TEST(ColorDistance, NormalizedByLargestPair) {
  const SuperpixelMap sp =
      testing::mapFromLabels(testing::stripes(30, 20, 3), {Lab{10, 0, 0}, Lab{20, 0, 0}, Lab{40, 0, 0}});
  const Matrix d = colorDistance(sp);
  EXPECT_NEAR(d(0, 1), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(d(1, 2), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(d(0, 2), 1.0);
  EXPECT_DOUBLE_EQ(d(2, 0), 1.0);
  EXPECT_EQ(d(1, 1), 0.0);
}

TEST(ColorDistance, TwoColoursReachOne) {
  const SuperpixelMap sp = testing::mapFromLabels(testing::stripes(30, 20, 2), {Lab{10, 3, 0}, Lab{70, -20, 9}});
  EXPECT_DOUBLE_EQ(colorDistance(sp)(0, 1), 1.0);
}

TEST(SpatialDistance, AnalyticValues) {
  EXPECT_EQ(sineSpatialDistance(0.3, 0.7, 0.3, 0.7), 0.0);
  EXPECT_NEAR(sineSpatialDistance(0.0, 0.0, 1.0, 1.0), 0.0, 1e-9);
  EXPECT_NEAR(sineSpatialDistance(0.0, 0.0, 0.5, 0.5), 1.0, 1e-12);
  EXPECT_NEAR(sineSpatialDistance(0.0, 0.0, 0.5, 0.0), 1.0 / std::numbers::sqrt2, 1e-12);
}

TEST(SpatialDistance, RangeAndSymmetry) {
  testing::Gen gen(5);
  for (int k = 0; k < 1000; ++k) {
    const double a = gen.uniform(), b = gen.uniform(), c = gen.uniform(), d = gen.uniform();
    const double v = sineSpatialDistance(a, b, c, d);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-12);
    EXPECT_DOUBLE_EQ(v, sineSpatialDistance(c, d, a, b));
  }
}

TEST(InterveningContour, FlatEdgeMapIsZeroInside) {
  const SuperpixelMap sp = testing::mapFromLabels(blocks4x3(), std::vector<Lab>(12, Lab{50, 0, 0}));
  const Matrix zero = Matrix::Zero(12, 12);
  const Matrix d = interveningContour(sp, EdgeMap(40, 30, 0.0), zero, zero, 0.5);
  EXPECT_EQ(d(5, 6), 0.0);
}

TEST(InterveningContour, StepBetweenInteriorPair) {
  const SuperpixelMap sp = testing::mapFromLabels(blocks4x3(), std::vector<Lab>(12, Lab{50, 0, 0}));
  EdgeMap edges(40, 30, 0.0);
  for (int y = 0; y < 30; ++y) edges(20, y) = 1.0;
  const Matrix zero = Matrix::Zero(12, 12);
  const Matrix d = interveningContour(sp, edges, zero, zero, 0.5);
  EXPECT_EQ(d(5, 6), 1.0);
  EXPECT_EQ(d(6, 5), 1.0);
}

TEST(InterveningContour, BorderPairsBlendColourAndSpace) {
  const SuperpixelMap sp = testing::mapFromLabels(blocks4x3(), std::vector<Lab>(12, Lab{50, 0, 0}));
  Matrix dC = Matrix::Zero(12, 12), dS = Matrix::Zero(12, 12);
  dC(0, 3) = dC(3, 0) = 0.4;
  dS(0, 3) = dS(3, 0) = 0.6;
  EdgeMap edges(40, 30, 1.0);
  const Matrix d = interveningContour(sp, edges, dC, dS, 0.5);
  EXPECT_NEAR(d(0, 3), 0.5, 1e-12);
  // A border node paired with an interior node still reads the edge map.
  EXPECT_EQ(d(0, 5), 1.0);
}

TEST(Bresenham, EndpointsIncluded) {
  EdgeMap edges(10, 10, 0.0);
  edges(7, 3) = 0.8;
  EXPECT_EQ(maxAlongLine(edges, 7, 3, 0, 0), 0.8);
  EXPECT_EQ(maxAlongLine(edges, 0, 0, 7, 3), 0.8);
  EXPECT_EQ(maxAlongLine(edges, 0, 0, 0, 9), 0.0);
}

TEST(Affinity, AnalyticAnchors) {
  const Matrix zero = Matrix::Zero(1, 1);
  EXPECT_EQ(affinity(zero, zero, zero, 0.1)(0, 0), 1.0);
  const Matrix d = Matrix::Constant(1, 1, 0.01);
  const Matrix s = Matrix::Constant(1, 1, 0.004);
  const Matrix e = Matrix::Constant(1, 1, 0.006);
  EXPECT_NEAR(affinity(d, s, e, 0.1)(0, 0), std::exp(-1.0), 1e-9);
  EXPECT_THROW(affinity(zero, zero, zero, 0.0), std::invalid_argument);
}

TEST(Affinity, StrictlyDecreasingInSummedDistance) {
  testing::Gen gen(9);
  for (int k = 0; k < 500; ++k) {
    const double a = gen.uniform(0, 3), b = gen.uniform(0, 3);
    if (a == b) continue;
    const Matrix ma = Matrix::Constant(1, 1, a), mb = Matrix::Constant(1, 1, b), z = Matrix::Zero(1, 1);
    const double fa = affinity(ma, z, z, 0.5)(0, 0), fb = affinity(mb, z, z, 0.5)(0, 0);
    EXPECT_EQ(a < b, fa > fb);
  }
}

TEST(Affinity, ModesDropComponents) {
  testing::Gen gen(13);
  std::vector<Lab> colors;
  for (int i = 0; i < 12; ++i) colors.push_back({gen.uniform(0, 100), gen.uniform(-40, 40), gen.uniform(-40, 40)});
  const SuperpixelMap sp = testing::mapFromLabels(blocks4x3(), colors);
  EdgeMap edges(40, 30);
  for (auto& v : edges.values()) v = gen.uniform();

  const AffinityMatrix color = computeAffinity(sp, edges, 0.1, 0.5, EdgeWeightMode::Color);
  EXPECT_TRUE(color.dS.isZero(0.0));
  EXPECT_TRUE(color.dEdge.isZero(0.0));
  const AffinityMatrix spatial = computeAffinity(sp, edges, 0.1, 0.5, EdgeWeightMode::ColorSpatial);
  EXPECT_FALSE(spatial.dS.isZero(0.0));
  EXPECT_TRUE(spatial.dEdge.isZero(0.0));
  const AffinityMatrix full = computeAffinity(sp, edges, 0.1, 0.5, EdgeWeightMode::Full);
  EXPECT_FALSE(full.dEdge.isZero(0.0));
  EXPECT_TRUE(full.A.isApprox(full.A.transpose(), 0.0));
  EXPECT_TRUE(full.A.diagonal().isOnes(0.0));
}

// ---- graph ----------------------------------------------------------------

TEST(Graph, TwoNodeConstruction) {
  const SuperpixelMap sp = testing::mapFromLabels(testing::stripes(20, 16, 2), {Lab{10, 0, 0}, Lab{90, 0, 0}});
  Matrix A(2, 2);
  A << 1.0, 0.6, 0.6, 1.0;
  const SaliencyGraph g = buildGraph(sp, A, {SeedRole::Background, {1}});
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].from, 0);
  EXPECT_EQ(g.edges[0].to, 1);
  EXPECT_DOUBLE_EQ(g.edges[0].cost, 0.4);
  ASSERT_EQ(g.virtualEdges.size(), 1u);
  EXPECT_EQ(g.virtualEdges[0].seed, 1);
  EXPECT_EQ(g.virtualEdges[0].cost, 0.0);
}

TEST(Graph, OnlyAdjacentPairsGetEdges) {
  const SuperpixelMap sp = testing::mapFromLabels(testing::stripes(30, 16, 3), std::vector<Lab>(3, Lab{}));
  const Matrix A = Matrix::Constant(3, 3, 0.9);
  const SaliencyGraph g = buildGraph(sp, A, {SeedRole::Background, {0}});
  for (const auto& e : g.edges) EXPECT_FALSE((e.from == 0 && e.to == 2) || (e.from == 2 && e.to == 0));
  EXPECT_EQ(g.edges.size(), 2u);
  EXPECT_THROW(buildGraph(sp, A, {SeedRole::Background, {}}), std::invalid_argument);
}

TEST(Geodesic, ChainExample) {
  SaliencyGraph g{3, {{0, 1, 0.2}, {1, 2, 0.3}, {0, 2, 0.9}}, {{2, 0.0}}};
  const NodeScores d = geodesicToVirtual(g);
  EXPECT_DOUBLE_EQ(d[2], 0.0);
  EXPECT_DOUBLE_EQ(d[1], 0.3);
  EXPECT_DOUBLE_EQ(d[0], 0.5);
}

TEST(Geodesic, EverySeededNodeIsFree) {
  SaliencyGraph g{3, {{0, 1, 0.2}, {1, 2, 0.3}}, {{0, 0.0}, {1, 0.0}, {2, 0.0}}};
  EXPECT_TRUE(geodesicToVirtual(g).isZero(0.0));
}

TEST(Geodesic, MatchesPathEnumeration) {
  testing::Gen gen(100);
  for (int trial = 0; trial < 100; ++trial) {
    const SaliencyGraph g = testing::randomGraph(gen);
    const NodeScores d = geodesicToVirtual(g);
    const std::vector<double> oracle = testing::enumeratePaths(g);
    for (int v = 0; v < g.nodeCount; ++v) EXPECT_NEAR(d[v], oracle[v], 1e-12) << "trial " << trial;
  }
}

TEST(Geodesic, AddingSeedsNeverRaisesCost) {
  testing::Gen gen(101);
  for (int trial = 0; trial < 100; ++trial) {
    SaliencyGraph g = testing::randomGraph(gen);
    const NodeScores before = geodesicToVirtual(g);
    g.virtualEdges.push_back({gen.integer(0, g.nodeCount - 1), 0.0});
    const NodeScores after = geodesicToVirtual(g);
    for (int v = 0; v < g.nodeCount; ++v) {
      EXPECT_LE(after[v], before[v]);
      EXPECT_TRUE(std::isfinite(after[v]));
      EXPECT_GE(after[v], 0.0);
    }
    for (const auto& s : g.virtualEdges) EXPECT_EQ(after[s.seed], 0.0);
  }
}

TEST(Geodesic, UnreachableComponentFallback) {
  // 0-1 seeded at 0; 2-3 has no seed.
  SaliencyGraph g{4, {{0, 1, 0.25}, {2, 3, 0.75}}, {{0, 0.0}}};
  const NodeScores d = geodesicToVirtual(g);
  EXPECT_DOUBLE_EQ(d[1], 0.25);
  EXPECT_DOUBLE_EQ(d[2], 0.25 + 0.75);
  EXPECT_DOUBLE_EQ(d[3], 0.25 + 0.75);

  SaliencyGraph isolated{2, {}, {{0, 0.0}}};
  EXPECT_DOUBLE_EQ(geodesicToVirtual(isolated)[1], 1.0);
}

TEST(Graph, SymmetricCostsFromSymmetricAffinity) {
  testing::Gen gen(17);
  const SuperpixelMap sp = testing::mapFromLabels(blocks4x3(), std::vector<Lab>(12, Lab{}));
  Matrix A = Matrix::Ones(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) A(i, j) = A(j, i) = gen.uniform(0.01, 1.0);
  const SaliencyGraph g = buildGraph(sp, A, {SeedRole::Background, {0}});
  for (const auto& e : g.edges) {
    EXPECT_DOUBLE_EQ(e.cost, 1.0 - A(e.to, e.from));
    EXPECT_GE(e.cost, 0.0);
    EXPECT_LT(e.cost, 1.0);
  }
}

}  // namespace
}  // namespace salgraph
