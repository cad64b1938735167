#pragma once

#include <vector>

#include "salgraph/affinity.hpp"

namespace salgraph {

enum class SeedRole { Background, Foreground };

struct SeedSet {
  SeedRole role = SeedRole::Background;
  std::vector<int> members;  ///< sorted, unique
};

struct GraphEdge {
  int from = 0;
  int to = 0;
  double cost = 0.0;
};

/// Zero-cost attachment of a seed to the virtual node.
struct VirtualEdge {
  int seed = 0;
  double cost = 0.0;
};

/// Superpixel adjacency graph with traversal cost 1 - A(i,j), plus one virtual
/// node joined to every seed.
struct SaliencyGraph {
  int nodeCount = 0;
  std::vector<GraphEdge> edges;
  std::vector<VirtualEdge> virtualEdges;
};

/// Throws std::invalid_argument("no seeds") for an empty seed set.
SaliencyGraph buildGraph(const SuperpixelMap& sp, const Matrix& A, const SeedSet& seeds);

/// Minimal accumulated cost from each node to the virtual node (multi-source
/// Dijkstra). Nodes that cannot reach any seed get the largest finite cost plus
/// the largest single edge cost (1 when the graph has no edges).
NodeScores geodesicToVirtual(const SaliencyGraph& graph);

}  // namespace salgraph
