#include "salgraph/foreground.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "salgraph/maxflow.hpp"
#include "salgraph/otsu.hpp"

namespace salgraph {

NodeScores rarity(const Matrix& A, const Matrix& dC, const SuperpixelMap& sp, double phi) {
  const int n = sp.count();
  NodeScores raw = NodeScores::Zero(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j : sp.features[i].neighbors) s += A(i, j);
    for (int j = 0; j < n; ++j) {
      if (j != i && dC(i, j) < phi) s += A(i, j);
    }
    raw[i] = s;
  }
  return minMaxNormalize(raw);
}

double BinaryEnergy::evaluate(const std::vector<std::uint8_t>& fg) const {
  if (fg.size() != unary.size()) throw std::invalid_argument("labeling size mismatch");
  double e = 0.0;
  for (std::size_t i = 0; i < unary.size(); ++i) {
    if (fg[i]) e += unary[i];
  }
  for (const PairTerm& p : pairwise) {
    if (fg[p.i] != fg[p.j]) e += p.weight;
  }
  return e;
}

Labeling minimizeEnergy(const BinaryEnergy& energy) {
  const int n = static_cast<int>(energy.unary.size());
  MaxFlow flow(n);
  // Source side = foreground. Selecting i cuts i->sink; rejecting it cuts source->i.
  for (int i = 0; i < n; ++i) {
    const double u = energy.unary[i];
    if (u > 0.0) {
      flow.addTerminal(i, 0.0, u);
    } else if (u < 0.0) {
      flow.addTerminal(i, -u, 0.0);
    }
  }
  for (const PairTerm& p : energy.pairwise) {
    if (p.weight < 0.0) throw std::invalid_argument("pairwise weight must be non-negative");
    flow.addEdge(p.i, p.j, p.weight, p.weight);
  }
  flow.solve();
  Labeling out;
  out.fg.resize(n);
  for (int i = 0; i < n; ++i) out.fg[i] = flow.inSourceSet(i) ? 1 : 0;
  out.energy = energy.evaluate(out.fg);
  return out;
}

std::vector<double> EtaSweep::values() const {
  if (steps < 1) throw std::invalid_argument("eta sweep needs at least one step");
  if (!(max >= min)) throw std::invalid_argument("eta sweep max must be >= min");
  std::vector<double> v(steps);
  if (steps == 1) {
    v[0] = max;
    return v;
  }
  const double span = max - min;
  for (int k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) / (steps - 1);
    v[k] = max - (std::pow(1.0 + span, t) - 1.0);
  }
  v.back() = min;
  return v;
}

BinaryEnergy foregroundEnergy(const NodeScores& conBp, const NodeScores& rare, const Matrix& A,
                              const SuperpixelMap& sp, double eta, double epsilon) {
  const int n = sp.count();
  if (conBp.size() != n || rare.size() != n) throw std::invalid_argument("score size mismatch");
  BinaryEnergy e;
  e.unary.resize(n);
  for (int i = 0; i < n; ++i) {
    const double s = std::clamp(conBp[i], epsilon, 1.0);
    const double relativeArea = sp.features[i].areaFraction * n;
    e.unary[i] = -std::log(s) + eta * relativeArea + rare[i];
  }
  for (int i = 0; i < n; ++i) {
    for (int j : sp.features[i].neighbors) {
      if (j > i) e.pairwise.push_back({i, j, A(i, j)});
    }
  }
  return e;
}

std::vector<SweepStep> sweepForeground(const NodeScores& conBp, const NodeScores& rare,
                                       const Matrix& A, const SuperpixelMap& sp,
                                       const ForegroundParams& params) {
  std::vector<SweepStep> steps;
  for (double eta : params.sweep.values()) {
    const BinaryEnergy e = foregroundEnergy(conBp, rare, A, sp, eta, params.epsilon);
    const Labeling lab = minimizeEnergy(e);
    SweepStep step;
    step.eta = eta;
    step.energy = lab.energy;
    for (int i = 0; i < sp.count(); ++i) {
      if (lab.fg[i]) {
        step.members.push_back(i);
        step.areaFraction += sp.features[i].areaFraction;
      }
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

std::vector<int> otsuRegion(const NodeScores& conBp) {
  const int t = otsuThreshold(histogram(conBp));
  std::vector<int> members;
  for (Eigen::Index i = 0; i < conBp.size(); ++i) {
    if (quantize(conBp[i]) >= t) members.push_back(static_cast<int>(i));
  }
  return members;
}

ForegroundRegion extractForeground(const NodeScores& conBp, const NodeScores& rare,
                                   const Matrix& A, const SuperpixelMap& sp,
                                   const ForegroundParams& params) {
  for (const SweepStep& step : sweepForeground(conBp, rare, A, sp, params)) {
    if (!step.members.empty() && step.areaFraction <= params.maxAreaFraction) {
      return {step.members, step.eta, false};
    }
  }
  return {otsuRegion(conBp), std::numeric_limits<double>::quiet_NaN(), true};
}

NodeScores foregroundSaliency(const SaliencyGraph& graph) {
  return NodeScores::Ones(graph.nodeCount) - minMaxNormalize(geodesicToVirtual(graph));
}

}  // namespace salgraph
