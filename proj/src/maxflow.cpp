#include "salgraph/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace salgraph {
namespace {
// Residual capacities at or below this are treated as saturated.
constexpr double kEps = 1e-12;
}  // namespace

MaxFlow::MaxFlow(int nodeCount)
    : nodeCount_(nodeCount),
      source_(nodeCount),
      sink_(nodeCount + 1),
      arcs_(static_cast<std::size_t>(nodeCount) + 2) {
  if (nodeCount < 0) throw std::invalid_argument("negative node count");
}

void MaxFlow::addArc(int from, int to, double cap, double revCap) {
  if (cap < 0.0 || revCap < 0.0) throw std::invalid_argument("negative capacity");
  arcs_[from].push_back({to, static_cast<int>(arcs_[to].size()), cap});
  arcs_[to].push_back({from, static_cast<int>(arcs_[from].size()) - 1, revCap});
}

void MaxFlow::addTerminal(int node, double fromSource, double toSink) {
  if (node < 0 || node >= nodeCount_) throw std::out_of_range("node index");
  if (fromSource > 0.0) addArc(source_, node, fromSource, 0.0);
  if (toSink > 0.0) addArc(node, sink_, toSink, 0.0);
}

void MaxFlow::addEdge(int i, int j, double capIJ, double capJI) {
  if (i < 0 || i >= nodeCount_ || j < 0 || j >= nodeCount_) throw std::out_of_range("node index");
  if (i == j) return;
  addArc(i, j, capIJ, capJI);
}

bool MaxFlow::buildLevels() {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[source_] = 0;
  q.push(source_);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Arc& a : arcs_[u]) {
      if (a.cap > kEps && level_[a.to] < 0) {
        level_[a.to] = level_[u] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[sink_] >= 0;
}

double MaxFlow::push(int u, double limit) {
  if (u == sink_) return limit;
  for (std::size_t& k = cursor_[u]; k < arcs_[u].size(); ++k) {
    Arc& a = arcs_[u][k];
    if (a.cap <= kEps || level_[a.to] != level_[u] + 1) continue;
    const double pushed = push(a.to, std::min(limit, a.cap));
    if (pushed > 0.0) {
      a.cap -= pushed;
      arcs_[a.to][a.rev].cap += pushed;
      return pushed;
    }
  }
  return 0.0;
}

double MaxFlow::solve() {
  const std::size_t total = arcs_.size();
  level_.assign(total, -1);
  cursor_.assign(total, 0);
  double flow = 0.0;
  while (buildLevels()) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    for (;;) {
      const double f = push(source_, std::numeric_limits<double>::infinity());
      if (f <= 0.0) break;
      flow += f;
    }
  }
  reachable_.assign(total, 0);
  for (std::size_t i = 0; i < total; ++i) reachable_[i] = level_[i] >= 0;
  solved_ = true;
  return flow;
}

bool MaxFlow::inSourceSet(int node) const {
  if (!solved_) throw std::logic_error("MaxFlow::solve() has not been called");
  return reachable_.at(node) != 0;
}

}  // namespace salgraph
