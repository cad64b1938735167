#include "salgraph/image.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace salgraph {
namespace {

// D65 reference white.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.00000;
constexpr double kZn = 1.08883;

double srgbToLinear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

const std::array<double, 256>& linearTable() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = srgbToLinear(i / 255.0);
    return t;
  }();
  return table;
}

double labF(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

void requireValidInput(const RgbImage& img) {
  if (img.width() < kMinImageSide || img.height() < kMinImageSide) {
    throw std::invalid_argument("image must be at least 16x16 pixels, got " +
                                std::to_string(img.width()) + "x" +
                                std::to_string(img.height()));
  }
}

Lab rgbToLab(Rgb px) {
  const auto& lin = linearTable();
  const double r = lin[px.r], g = lin[px.g], b = lin[px.b];
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  const double fx = labF(x / kXn), fy = labF(y / kYn), fz = labF(z / kZn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabImage rgbToLab(const RgbImage& img) {
  LabImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out[i] = rgbToLab(img[i]);
  return out;
}

EdgeMap computeEdgeMap(const LabImage& img) {
  const int w = img.width(), h = img.height();
  EdgeMap mag(w, h, 0.0);
  auto L = [&](int x, int y) {
    return img(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1)).L;
  };
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (L(x + 1, y - 1) + 2.0 * L(x + 1, y) + L(x + 1, y + 1)) -
                        (L(x - 1, y - 1) + 2.0 * L(x - 1, y) + L(x - 1, y + 1));
      const double gy = (L(x - 1, y + 1) + 2.0 * L(x, y + 1) + L(x + 1, y + 1)) -
                        (L(x - 1, y - 1) + 2.0 * L(x, y - 1) + L(x + 1, y - 1));
      const double m = std::hypot(gx, gy);
      mag(x, y) = m;
      if (first) {
        lo = hi = m;
        first = false;
      } else {
        lo = std::min(lo, m);
        hi = std::max(hi, m);
      }
    }
  }
  const double range = hi - lo;
  for (double& v : mag.values()) v = range > 0.0 ? (v - lo) / range : 0.0;
  return mag;
}

EdgeMap edgeMapFromGray(const GrayImage& gray, int expectedWidth, int expectedHeight) {
  if (gray.width() != expectedWidth || gray.height() != expectedHeight) {
    throw std::invalid_argument("edge map dimensions do not match the image");
  }
  EdgeMap out(gray.width(), gray.height());
  for (std::size_t i = 0; i < gray.size(); ++i) out[i] = gray[i] / 255.0;
  return out;
}

}  // namespace salgraph
