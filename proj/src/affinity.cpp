#include "salgraph/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace salgraph {

NodeScores minMaxNormalize(const NodeScores& v) {
  if (v.size() == 0) return v;
  const double lo = v.minCoeff(), hi = v.maxCoeff();
  if (!(hi > lo)) return NodeScores::Zero(v.size());
  return (v.array() - lo) / (hi - lo);
}

Matrix minMaxNormalize(const Matrix& m) {
  if (m.size() == 0) return m;
  const double lo = m.minCoeff(), hi = m.maxCoeff();
  if (!(hi > lo)) return Matrix::Zero(m.rows(), m.cols());
  return (m.array() - lo) / (hi - lo);
}

Matrix colorDistance(const SuperpixelMap& sp) {
  const int n = sp.count();
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Lab& ci = sp.features[i].meanColor;
    for (int j = i + 1; j < n; ++j) {
      const Lab& cj = sp.features[j].meanColor;
      const double dl = ci.L - cj.L, da = ci.a - cj.a, db = ci.b - cj.b;
      d(i, j) = d(j, i) = std::sqrt(dl * dl + da * da + db * db);
    }
  }
  return minMaxNormalize(d);
}

double sineSpatialDistance(double x1, double y1, double x2, double y2) {
  const double sx = std::sin(std::numbers::pi * std::abs(x1 - x2));
  const double sy = std::sin(std::numbers::pi * std::abs(y1 - y2));
  return std::sqrt(sx * sx + sy * sy) / std::numbers::sqrt2;
}

Matrix sineSpatialDistance(const SuperpixelMap& sp) {
  const int n = sp.count();
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& fi = sp.features[i];
    for (int j = i + 1; j < n; ++j) {
      const auto& fj = sp.features[j];
      d(i, j) = d(j, i) = sineSpatialDistance(fi.cx, fi.cy, fj.cx, fj.cy);
    }
  }
  return d;
}

double maxAlongLine(const EdgeMap& edges, int x0, int y0, int x1, int y1) {
  const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  double best = 0.0;
  for (;;) {
    best = std::max(best, edges(x0, y0));
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
  return best;
}

Matrix interveningContour(const SuperpixelMap& sp, const EdgeMap& edges, const Matrix& dC,
                          const Matrix& dS, double beta) {
  if (!edges.sameShape(sp.labels)) throw std::invalid_argument("edge map and label map differ in size");
  const int n = sp.count();
  const int w = sp.width(), h = sp.height();
  auto pixel = [&](const SuperpixelFeature& f) {
    return std::pair{std::clamp(static_cast<int>(std::lround(f.px)), 0, w - 1),
                     std::clamp(static_cast<int>(std::lround(f.py)), 0, h - 1)};
  };
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& fi = sp.features[i];
    const auto [xi, yi] = pixel(fi);
    for (int j = i + 1; j < n; ++j) {
      const auto& fj = sp.features[j];
      double v;
      if (fi.onBorder() && fj.onBorder()) {
        v = beta * dC(i, j) + (1.0 - beta) * dS(i, j);
      } else {
        const auto [xj, yj] = pixel(fj);
        v = maxAlongLine(edges, xi, yi, xj, yj);
      }
      d(i, j) = d(j, i) = v;
    }
  }
  return d;
}

Matrix affinity(const Matrix& dC, const Matrix& dS, const Matrix& dEdge, double sigmaW) {
  if (!(sigmaW > 0.0)) throw std::invalid_argument("sigma_w must be > 0");
  const double scale = 2.0 * sigmaW * sigmaW;
  return (-(dC + dS + dEdge).array() / scale).exp().matrix();
}

AffinityMatrix computeAffinity(const SuperpixelMap& sp, const EdgeMap& edges, double sigmaW,
                               double beta, EdgeWeightMode mode) {
  const int n = sp.count();
  AffinityMatrix out;
  out.dC = colorDistance(sp);
  out.dS = mode == EdgeWeightMode::Color ? Matrix::Zero(n, n) : sineSpatialDistance(sp);
  if (mode == EdgeWeightMode::Full) {
    out.dEdge = interveningContour(sp, edges, out.dC, out.dS, beta);
  } else {
    out.dEdge = Matrix::Zero(n, n);
  }
  out.A = affinity(out.dC, out.dS, out.dEdge, sigmaW);
  return out;
}

}  // namespace salgraph
