#pragma once

#include <optional>
#include <vector>

#include "salgraph/background.hpp"
#include "salgraph/config.hpp"
#include "salgraph/foreground.hpp"
#include "salgraph/refine.hpp"
#include "salgraph/superpixels.hpp"

namespace salgraph {

struct PipelineInputs {
  RgbImage image;
  std::optional<EdgeMap> edges;         ///< replaces the Sobel detector when present
  std::optional<GrayImage> objectness;  ///< per-pixel objectness, image-sized
};

/// Every intermediate of one run, kept for stage dumps and tests.
struct PipelineResult {
  SuperpixelMap superpixels;
  EdgeMap edges;
  AffinityMatrix affinity;
  DivergenceScores divergence;
  SeedSet backgroundSeeds;
  NodeScores backgroundGeodesic;
  NodeScores conBp;
  NodeScores rare;
  ForegroundRegion foreground;
  NodeScores foregroundGeodesic;
  NodeScores conFp;
  NodeScores sCom;
  NodeGate gate;
  std::vector<int> clusters;
  NodeScores final;
  GrayImage saliency;
};

ForegroundParams foregroundParams(const PipelineConfig& cfg);

/// Runs superpixels -> affinities -> background map -> foreground map ->
/// integration -> refinement for one image.
PipelineResult runPipeline(const PipelineInputs& inputs, const PipelineConfig& cfg);

}  // namespace salgraph
