#pragma once

#include <vector>

namespace salgraph {

/// s-t max-flow / min-cut on a graph with real capacities (Dinic).
///
/// Nodes are 0..n-1; the source and sink terminals are implicit. After
/// solve(), inSourceSet(i) reports membership in the set of nodes reachable
/// from the source in the residual graph, i.e. the smallest minimum cut.
class MaxFlow {
 public:
  explicit MaxFlow(int nodeCount);

  int nodeCount() const { return nodeCount_; }

  /// Adds capacity source->i and i->sink.
  void addTerminal(int node, double fromSource, double toSink);
  /// Adds capacity i->j and j->i.
  void addEdge(int i, int j, double capIJ, double capJI);

  double solve();
  bool inSourceSet(int node) const;

 private:
  struct Arc {
    int to;
    int rev;
    double cap;
  };

  bool buildLevels();
  double push(int u, double limit);
  void addArc(int from, int to, double cap, double revCap);

  int nodeCount_;
  int source_;
  int sink_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::vector<char> reachable_;
  bool solved_ = false;
};

}  // namespace salgraph
