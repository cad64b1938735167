#include "salgraph/background.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace salgraph {

DivergenceScores divergence(const Matrix& A, const SuperpixelMap& sp) {
  const int n = sp.count();
  if (A.rows() != n || A.cols() != n) throw std::invalid_argument("affinity size mismatch");
  NodeScores rawC(n), rawM(n);
  for (int i = 0; i < n; ++i) {
    double wsum = 0.0, mx = 0.0, my = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = A(i, j);
      wsum += a;
      mx += a * sp.features[j].cx;
      my += a * sp.features[j].cy;
    }
    mx /= wsum;
    my /= wsum;
    double scatterMean = 0.0, scatterCentre = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = A(i, j);
      const auto& f = sp.features[j];
      scatterMean += a * std::hypot(f.cx - mx, f.cy - my);
      scatterCentre += a * std::hypot(f.cx - 0.5, f.cy - 0.5);
    }
    rawC[i] = scatterMean / wsum;
    rawM[i] = scatterCentre / wsum;
  }
  DivergenceScores out;
  out.divC = minMaxNormalize(rawC);
  out.divM = minMaxNormalize(rawM);
  out.div = minMaxNormalize(NodeScores(out.divC + out.divM));
  return out;
}

BorderThresholds BorderThresholds::fromBottom(double bottom) {
  BorderThresholds t;
  t.bottom = bottom;
  t.top = bottom / 3.0;
  t.left = 2.0 * t.top;
  t.right = 2.0 * t.top;
  return t;
}

double BorderThresholds::forSides(std::uint8_t sides) const {
  double t = 0.0;
  if (sides & kTop) t = std::max(t, top);
  if (sides & kBottom) t = std::max(t, bottom);
  if (sides & kLeft) t = std::max(t, left);
  if (sides & kRight) t = std::max(t, right);
  return t;
}

BorderThresholds borderThresholds(const NodeScores& div) {
  return BorderThresholds::fromBottom(div.size() > 0 ? div.mean() : 0.0);
}

SeedSet allBorderSeeds(const SuperpixelMap& sp) {
  SeedSet s{SeedRole::Background, {}};
  for (int i = 0; i < sp.count(); ++i) {
    if (sp.features[i].onBorder()) s.members.push_back(i);
  }
  return s;
}

SeedSet selectBackgroundSeeds(const NodeScores& div, const SuperpixelMap& sp,
                              const BorderThresholds& thresholds) {
  if (div.size() != sp.count()) throw std::invalid_argument("divergence size mismatch");
  SeedSet border = allBorderSeeds(sp);
  SeedSet kept{SeedRole::Background, {}};
  for (int i : border.members) {
    if (!(div[i] < thresholds.forSides(sp.features[i].borderSides))) kept.members.push_back(i);
  }
  return kept.members.empty() ? border : kept;
}

SeedSet selectBackgroundSeeds(const NodeScores& div, const SuperpixelMap& sp) {
  return selectBackgroundSeeds(div, sp, borderThresholds(div));
}

NodeScores backgroundSaliency(const SaliencyGraph& graph) {
  return minMaxNormalize(geodesicToVirtual(graph));
}

}  // namespace salgraph
