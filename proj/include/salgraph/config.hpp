#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "salgraph/affinity.hpp"
#include "salgraph/refine.hpp"

namespace salgraph {

enum class SeedMode { AllBorder, Filtered };
enum class RefineMode { None, MrOnly, MidlevelOnly, GateOnly, Full };

struct PipelineConfig {
  int nSuperpixels = 250;
  double sigmaW = 0.1;
  double beta = 0.5;
  double phi = 0.15;
  double kappa = 4.0;
  double mu = 0.01;
  double tauC = 0.1;
  double etaMax = 4.0;
  double etaMin = -16.0;
  int etaSteps = 32;
  double slicCompactness = 10.0;
  int slicIterations = 10;
  EdgeWeightMode edgeWeights = EdgeWeightMode::Full;
  SeedMode seeds = SeedMode::Filtered;
  RefineMode refine = RefineMode::Full;
  Laplacian laplacian = Laplacian::Unnormalized;

  bool operator==(const PipelineConfig&) const = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const PipelineConfig& cfg);

/// Sets one field from its textual value. Throws std::invalid_argument for an
/// unknown key or a malformed value.
void applySetting(PipelineConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key=value` lines; `#` starts a comment, blank lines are ignored.
PipelineConfig parseConfig(std::string_view text, PipelineConfig base = {});
PipelineConfig loadConfig(const std::filesystem::path& path, PipelineConfig base = {});

/// Every field, one `key=value` per line, in a form parseConfig reads back exactly.
std::string formatConfig(const PipelineConfig& cfg);

std::string toString(EdgeWeightMode m);
std::string toString(SeedMode m);
std::string toString(RefineMode m);
std::string toString(Laplacian m);

}  // namespace salgraph
