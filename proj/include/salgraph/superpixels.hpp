#pragma once

#include <cstdint>
#include <vector>

#include "salgraph/image.hpp"

namespace salgraph {

enum BorderSide : std::uint8_t {
  kTop = 1u << 0,
  kBottom = 1u << 1,
  kLeft = 1u << 2,
  kRight = 1u << 3,
};

struct SuperpixelFeature {
  Lab meanColor;
  double cx = 0.0;  ///< centroid x / (width - 1)
  double cy = 0.0;  ///< centroid y / (height - 1)
  double px = 0.0;  ///< centroid in pixel coordinates
  double py = 0.0;
  double areaFraction = 0.0;
  std::uint8_t borderSides = 0;
  std::vector<int> neighbors;  ///< sorted, 4-connected adjacency

  bool onBorder() const { return borderSides != 0; }
  bool touches(BorderSide s) const { return (borderSides & s) != 0; }
};

struct SuperpixelMap {
  LabelMap labels;
  std::vector<SuperpixelFeature> features;

  int count() const { return static_cast<int>(features.size()); }
  int width() const { return labels.width(); }
  int height() const { return labels.height(); }
};

struct SlicParams {
  int targetCount = 250;
  double compactness = 10.0;
  int iterations = 10;
};

/// Seed grid used by SLIC: columns x rows of equal cells.
struct SeedGrid {
  int columns = 1;
  int rows = 1;
  double stepX = 0.0;
  double stepY = 0.0;
};

/// Throws std::invalid_argument("image too small for requested superpixel count")
/// when a grid cell would be narrower than 2 pixels.
SeedGrid seedGrid(int width, int height, int targetCount);

/// SLIC k-means in (L,a,b,x,y) followed by connectivity enforcement.
/// Labels are compact in [0, N).
LabelMap slicLabels(const LabImage& img, const SlicParams& params);

/// Keeps the largest 4-connected component of every label and merges the
/// remaining pieces into their largest adjacent superpixel (lowest index on ties).
/// Returns relabelled, compact labels.
LabelMap enforceConnectivity(const LabelMap& labels);

SuperpixelMap extractFeatures(LabelMap labels, const LabImage& img);

SuperpixelMap slicSegment(const LabImage& img, const SlicParams& params);

}  // namespace salgraph
