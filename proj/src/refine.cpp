#include "salgraph/refine.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace salgraph {

NodeScores integrateRaw(const NodeScores& conBp, const NodeScores& conFp, double kappa) {
  if (conBp.size() != conFp.size()) throw std::invalid_argument("map size mismatch");
  return (conBp.array() * (1.0 - (-kappa * conFp.array()).exp())).matrix();
}

NodeScores integrate(const NodeScores& conBp, const NodeScores& conFp, double kappa) {
  return minMaxNormalize(integrateRaw(conBp, conFp, kappa));
}

int NodeGate::activeCount() const {
  return static_cast<int>(std::count(delta.begin(), delta.end(), std::uint8_t{1}));
}

NodeGate gateNodes(const NodeScores& sCom, const std::optional<NodeScores>& objectness) {
  const auto n = sCom.size();
  NodeGate gate{std::vector<std::uint8_t>(n, 0)};
  auto markTopClass = [&gate](const NodeScores& v) {
    const int high = twoLevelOtsu(v).high;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (quantize(v[i]) >= high) gate.delta[i] = 1;
    }
  };
  markTopClass(sCom);
  if (objectness) {
    if (objectness->size() != n) throw std::invalid_argument("objectness/superpixel mismatch");
    markTopClass(*objectness);
  }
  if (gate.activeCount() == 0) return NodeGate::allActive(static_cast<int>(n));
  return gate;
}

std::vector<int> midlevelClusters(const SuperpixelMap& sp, double tauC) {
  const int n = sp.count();
  std::vector<int> cluster(n);
  for (int i = 0; i < n; ++i) cluster[i] = i;
  if (n < 2) return cluster;

  double maxRaw = 0.0;
  auto colorDist = [](const Lab& p, const Lab& q) {
    return std::sqrt((p.L - q.L) * (p.L - q.L) + (p.a - q.a) * (p.a - q.a) + (p.b - q.b) * (p.b - q.b));
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      maxRaw = std::max(maxRaw, colorDist(sp.features[i].meanColor, sp.features[j].meanColor));
    }
  }

  struct Cluster {
    double area = 0.0;
    double L = 0.0, a = 0.0, b = 0.0;  // area-weighted sums
    Lab mean() const { return {L / area, a / area, b / area}; }
  };
  std::vector<Cluster> stats(n);
  for (int i = 0; i < n; ++i) {
    const auto& f = sp.features[i];
    stats[i] = {f.areaFraction, f.areaFraction * f.meanColor.L, f.areaFraction * f.meanColor.a,
                f.areaFraction * f.meanColor.b};
  }

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j : sp.features[i].neighbors) {
      if (j > i) edges.emplace_back(i, j);
    }
  }

  for (;;) {
    bool found = false;
    std::tuple<double, int, int> best{0.0, 0, 0};
    for (const auto& [i, j] : edges) {
      const int a = std::min(cluster[i], cluster[j]);
      const int b = std::max(cluster[i], cluster[j]);
      if (a == b) continue;
      const double raw = colorDist(stats[a].mean(), stats[b].mean());
      const double d = maxRaw > 0.0 ? raw / maxRaw : 0.0;
      const std::tuple<double, int, int> cand{d, a, b};
      if (!found || cand < best) {
        best = cand;
        found = true;
      }
    }
    if (!found || !(std::get<0>(best) < tauC)) break;
    const int keep = std::get<1>(best), drop = std::get<2>(best);
    for (int& c : cluster) {
      if (c == drop) c = keep;
    }
    stats[keep].area += stats[drop].area;
    stats[keep].L += stats[drop].L;
    stats[keep].a += stats[drop].a;
    stats[keep].b += stats[drop].b;
  }
  return cluster;
}

Matrix midlevelAffinity(const SuperpixelMap& sp, const Matrix& A, std::span<const int> clusters) {
  const int n = sp.count();
  if (static_cast<int>(clusters.size()) != n) throw std::invalid_argument("cluster size mismatch");
  Matrix P = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j : sp.features[i].neighbors) P(i, j) += A(i, j);
    for (int j = 0; j < n; ++j) {
      if (clusters[i] == clusters[j]) P(i, j) += 1.0;
    }
  }
  return P;
}

Matrix emrSystem(const Matrix& P, const NodeGate& gate, double mu, Laplacian laplacian) {
  const auto n = P.rows();
  if (P.cols() != n || static_cast<Eigen::Index>(gate.delta.size()) != n) {
    throw std::invalid_argument("EMR input size mismatch");
  }
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
  const double alpha = 1.0 / (1.0 + mu);
  const NodeScores d = P.rowwise().sum();
  Eigen::VectorXd delta(n);
  for (Eigen::Index i = 0; i < n; ++i) delta[i] = gate.delta[i];
  if ((d.array() <= 0.0).any()) throw std::invalid_argument("degree matrix must be positive");

  if (laplacian == Laplacian::Unnormalized) {
    Matrix M = -alpha * P * delta.asDiagonal();
    M.diagonal() += d;
    return M;
  }
  const Eigen::VectorXd s = d.array().rsqrt();
  Matrix M = -alpha * s.asDiagonal() * P * s.asDiagonal() * delta.asDiagonal();
  M.diagonal().array() += 1.0;
  return M;
}

NodeScores emrRank(const Matrix& P, const NodeGate& gate, const NodeScores& y, double mu,
                   Laplacian laplacian) {
  const Matrix dense = emrSystem(P, gate, mu, laplacian);
  const auto n = dense.rows();
  if (y.size() != n) throw std::invalid_argument("query size mismatch");

  Eigen::SparseMatrix<double> M = dense.sparseView();
  M.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(M);
  if (lu.info() != Eigen::Success) throw std::runtime_error("EMR solve failed");
  NodeScores f = lu.solve(y);

  constexpr double tolerance = 1e-8;
  NodeScores r = y - M * f;
  // A couple of refinement steps absorb round-off on badly scaled rows.
  for (int step = 0; step < 3 && r.lpNorm<Eigen::Infinity>() > tolerance; ++step) {
    f += lu.solve(r);
    r = y - M * f;
  }
  if (!f.allFinite() || !(r.lpNorm<Eigen::Infinity>() <= tolerance)) {
    throw std::runtime_error("EMR solve failed");
  }
  return f;
}

NodeScores emrSolve(const Matrix& P, const NodeGate& gate, const NodeScores& y, double mu,
                    Laplacian laplacian) {
  return minMaxNormalize(emrRank(P, gate, y, mu, laplacian));
}

GrayImage renderSaliency(const NodeScores& f, const LabelMap& labels) {
  GrayImage out(labels.width(), labels.height());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l < 0 || l >= f.size()) throw std::out_of_range("label outside score vector");
    out[i] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(f[l], 0.0, 1.0)));
  }
  return out;
}

NodeScores superpixelMeans(const GrayImage& map, const LabelMap& labels, int count) {
  if (!map.sameShape(labels)) throw std::invalid_argument("map and labels differ in size");
  NodeScores sum = NodeScores::Zero(count);
  Eigen::VectorXd n = Eigen::VectorXd::Zero(count);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    sum[labels[i]] += map[i] / 255.0;
    n[labels[i]] += 1.0;
  }
  return (sum.array() / n.array().max(1.0)).matrix();
}

}  // namespace salgraph
