#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "salgraph/config.hpp"
#include "salgraph/evaluation.hpp"
#include "salgraph/pipeline.hpp"

namespace salgraph::batch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAllFailed = 3;

struct DetectOptions {
  std::filesystem::path input;  ///< image file or directory of images
  std::filesystem::path output;
  PipelineConfig config;
  std::optional<std::filesystem::path> edgeDir;        ///< <stem>.png edge maps
  std::optional<std::filesystem::path> objectnessDir;  ///< <stem>.png objectness maps
  bool dumpStages = false;
  int jobs = 1;
};

/// Writes <stem>_saliency.png per image. Unreadable images are skipped with a
/// warning. Returns 0 if any image succeeded, 3 if none did, 2 on bad input.
int detect(const DetectOptions& opts, std::ostream& log);

struct EvaluateOptions {
  std::filesystem::path predDir;
  std::filesystem::path gtDir;
  std::filesystem::path report;
};

/// Pairs predictions with ground truth by stem (a trailing "_saliency" on the
/// prediction is ignored) and writes the report files. Returns 2 when nothing pairs up.
int evaluate(const EvaluateOptions& opts, std::ostream& log, EvalReport* result = nullptr);

struct DatasetPair {
  std::filesystem::path image;
  std::filesystem::path groundTruth;
  std::optional<std::filesystem::path> edge;
  std::optional<std::filesystem::path> objectness;
};

/// CSV with header `image,gt,edge,objectness`; relative paths resolve against
/// the manifest's directory. Every referenced file must exist.
std::vector<DatasetPair> readManifest(const std::filesystem::path& path);

struct Variant {
  std::string name;
  std::vector<std::pair<std::string, std::string>> overrides;
};

/// Comma-separated variants; each is `baseline` or `key=value` terms joined by '+'.
std::vector<Variant> parseVariants(std::string_view list);

struct AblateOptions {
  std::filesystem::path manifest;
  std::string variants;
  std::filesystem::path out;
  PipelineConfig base;
  int jobs = 1;
};

struct VariantSummary {
  std::string name;
  PipelineConfig config;
  EvalReport report;
};

/// Runs every variant over the manifest. Per variant: predictions, report.csv,
/// report_curves.csv and report_summary.json under out/<name>/; an overview in
/// out/ablation.csv.
int ablate(const AblateOptions& opts, std::ostream& log, std::vector<VariantSummary>* result = nullptr);

/// <stem>_{div,conbp,rare,fgmask,confp,scom,final}.png, <stem>_labels.png,
/// <stem>_stages.csv and <stem>_affinity.csv.
void dumpStages(const PipelineResult& r, const std::filesystem::path& dir, const std::string& stem);

}  // namespace salgraph::batch
