#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "salgraph/image.hpp"
#include "salgraph/superpixels.hpp"

namespace salgraph::testing {

// Small generator for property tests. Maps raw engine output itself so cases
// do not depend on the standard library's distribution implementations.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(double p = 0.5) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

inline RgbImage uniformImage(int w, int h, Rgb c) { return RgbImage(w, h, c); }

// Builds features from a hand-made label field, colouring every label with
// its entry in `colors`.
inline SuperpixelMap mapFromLabels(const LabelMap& labels, const std::vector<Lab>& colors) {
  LabImage lab(labels.width(), labels.height());
  for (std::size_t i = 0; i < labels.size(); ++i) lab[i] = colors[labels[i]];
  return extractFeatures(labels, lab);
}

// Vertical stripes of equal width, one label per stripe.
inline LabelMap stripes(int w, int h, int count) {
  LabelMap labels(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) labels(x, y) = x * count / w;
  return labels;
}

}  // namespace salgraph::testing
