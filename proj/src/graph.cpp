#include "salgraph/graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace salgraph {

SaliencyGraph buildGraph(const SuperpixelMap& sp, const Matrix& A, const SeedSet& seeds) {
  if (seeds.members.empty()) throw std::invalid_argument("no seeds");
  const int n = sp.count();
  if (A.rows() != n || A.cols() != n) throw std::invalid_argument("affinity size mismatch");
  SaliencyGraph g;
  g.nodeCount = n;
  for (int i = 0; i < n; ++i) {
    for (int j : sp.features[i].neighbors) {
      if (j > i) g.edges.push_back({i, j, 1.0 - A(i, j)});
    }
  }
  for (int s : seeds.members) {
    if (s < 0 || s >= n) throw std::out_of_range("seed index out of range");
    g.virtualEdges.push_back({s, 0.0});
  }
  return g;
}

NodeScores geodesicToVirtual(const SaliencyGraph& graph) {
  const int n = graph.nodeCount;
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  double maxEdge = 0.0;
  for (const GraphEdge& e : graph.edges) {
    if (e.cost < 0.0) throw std::invalid_argument("negative edge cost");
    adj[e.from].emplace_back(e.to, e.cost);
    adj[e.to].emplace_back(e.from, e.cost);
    maxEdge = std::max(maxEdge, e.cost);
  }
  if (graph.edges.empty()) maxEdge = 1.0;

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (const VirtualEdge& v : graph.virtualEdges) {
    if (v.cost < dist[v.seed]) {
      dist[v.seed] = v.cost;
      queue.emplace(v.cost, v.seed);
    }
  }
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, c] : adj[u]) {
      const double nd = d + c;
      if (nd < dist[v]) {
        dist[v] = nd;
        queue.emplace(nd, v);
      }
    }
  }

  double maxFinite = 0.0;
  for (double d : dist) {
    if (d < inf) maxFinite = std::max(maxFinite, d);
  }
  NodeScores out(n);
  for (int i = 0; i < n; ++i) out[i] = dist[i] < inf ? dist[i] : maxFinite + maxEdge;
  return out;
}

}  // namespace salgraph
