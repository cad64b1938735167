#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "salgraph/image.hpp"

namespace salgraph {

struct SyntheticSample {
  std::string name;
  RgbImage image;
  GrayImage groundTruth;  ///< 255 inside objects, 0 elsewhere
  bool touchesBottom = false;
};

/// Deterministic corpus: uniform or gradient backgrounds with one or two
/// contrasting rectangles/ellipses. Sample 5 carries an object resting on the
/// bottom border.
std::vector<SyntheticSample> syntheticCorpus(int count = 20, int width = 300, int height = 200,
                                             std::uint32_t seed = 20240607u);

/// Writes images/<name>.png, gt/<name>.png and manifest.csv under `dir`.
void writeSyntheticCorpus(const std::filesystem::path& dir, const std::vector<SyntheticSample>& corpus);

}  // namespace salgraph
