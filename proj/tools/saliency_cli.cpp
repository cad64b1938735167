// saliency: batch salient-object detection, evaluation and ablation.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "salgraph/batch.hpp"
#include "salgraph/synthetic.hpp"

namespace fs = std::filesystem;
using namespace salgraph;

namespace {

// Config file first, then --set overrides.
std::optional<PipelineConfig> resolveConfig(const std::string& file, const std::vector<std::string>& sets) {
  try {
    PipelineConfig cfg = file.empty() ? PipelineConfig{} : loadConfig(file);
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
      applySetting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    validate(cfg);
    return cfg;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based salient object detection"};
  app.require_subcommand(1);

  std::string configFile;
  std::vector<std::string> sets;
  int jobs = 1;

  batch::DetectOptions det;
  std::string detInput, detOutput, edgeDir, objDir;
  auto* detectCmd = app.add_subcommand("detect", "Compute saliency maps for an image or a directory");
  detectCmd->add_option("--input", detInput, "Image file or directory")->required();
  detectCmd->add_option("--output", detOutput, "Output directory")->required();
  detectCmd->add_option("--config", configFile, "key=value configuration file");
  detectCmd->add_option("--set", sets, "Override one configuration key (key=value)");
  detectCmd->add_option("--edge-maps", edgeDir, "Directory of <stem>.png edge-probability maps");
  detectCmd->add_option("--objectness", objDir, "Directory of <stem>.png objectness maps");
  detectCmd->add_flag("--dump-stages", det.dumpStages, "Write intermediate maps and CSVs");
  detectCmd->add_option("--jobs", jobs, "Images processed in parallel")->check(CLI::PositiveNumber);

  batch::EvaluateOptions ev;
  std::string predDir, gtDir, report;
  auto* evalCmd = app.add_subcommand("eval", "Score saliency maps against ground truth");
  evalCmd->add_option("--pred", predDir, "Prediction directory")->required();
  evalCmd->add_option("--gt", gtDir, "Ground-truth directory")->required();
  evalCmd->add_option("--report", report, "Per-image CSV path")->required();

  std::string manifest, variants, outDir;
  auto* ablateCmd = app.add_subcommand("ablate", "Compare pipeline variants on a dataset");
  ablateCmd->add_option("--manifest", manifest, "CSV: image,gt,edge,objectness")->required();
  ablateCmd->add_option("--variants", variants, "Comma-separated variants, e.g. baseline,edgeWeights=color")->required();
  ablateCmd->add_option("--out", outDir, "Output directory")->required();
  ablateCmd->add_option("--config", configFile, "Base configuration file");
  ablateCmd->add_option("--set", sets, "Override one base configuration key (key=value)");
  ablateCmd->add_option("--jobs", jobs, "Images processed in parallel")->check(CLI::PositiveNumber);

  std::string synthOut;
  int synthCount = 20;
  auto* synthCmd = app.add_subcommand("synth", "Write the synthetic test corpus");
  synthCmd->add_option("--out", synthOut, "Output directory")->required();
  synthCmd->add_option("--count", synthCount, "Number of images")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : batch::kExitUsage;
  }

  if (detectCmd->parsed()) {
    const auto cfg = resolveConfig(configFile, sets);
    if (!cfg) return batch::kExitUsage;
    det.input = detInput;
    det.output = detOutput;
    det.config = *cfg;
    if (!edgeDir.empty()) det.edgeDir = fs::path(edgeDir);
    if (!objDir.empty()) det.objectnessDir = fs::path(objDir);
    det.jobs = jobs;
    return batch::detect(det, std::cerr);
  }
  if (evalCmd->parsed()) {
    ev.predDir = predDir;
    ev.gtDir = gtDir;
    ev.report = report;
    EvalReport result;
    const int code = batch::evaluate(ev, std::cerr, &result);
    if (code == batch::kExitOk) {
      std::cout << "images=" << result.imageCount << " meanMaxF=" << result.meanMaxF
                << " meanMAE=" << result.meanMAE << " meanAUC=" << result.meanAUC << '\n';
    }
    return code;
  }
  if (ablateCmd->parsed()) {
    const auto cfg = resolveConfig(configFile, sets);
    if (!cfg) return batch::kExitUsage;
    batch::AblateOptions opts{manifest, variants, outDir, *cfg, jobs};
    std::vector<batch::VariantSummary> summaries;
    const int code = batch::ablate(opts, std::cerr, &summaries);
    for (const auto& s : summaries) {
      std::cout << s.name << ": meanMaxF=" << s.report.meanMaxF << " meanMAE=" << s.report.meanMAE
                << " meanAUC=" << s.report.meanAUC << '\n';
    }
    return code;
  }
  if (synthCmd->parsed()) {
    try {
      writeSyntheticCorpus(synthOut, syntheticCorpus(synthCount));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
    return 0;
  }
  return batch::kExitUsage;
}
