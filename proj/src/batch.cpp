#include "salgraph/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "salgraph/io.hpp"

namespace fs = std::filesystem;

namespace salgraph::batch {
namespace {

struct ImageJob {
  fs::path image;
  std::string stem;
  std::optional<fs::path> edge;
  std::optional<fs::path> objectness;
};

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
template <typename Fn>
void parallelFor(std::size_t count, int jobs, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1, jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GrayImage renderBinary(const std::vector<int>& members, const SuperpixelMap& sp) {
  NodeScores mask = NodeScores::Zero(sp.count());
  for (int m : members) mask[m] = 1.0;
  return renderSaliency(mask, sp.labels);
}

// Returns a warning, or an empty string on success.
std::string runJob(const ImageJob& job, const PipelineConfig& cfg, const fs::path& outDir,
                   bool dump) {
  PipelineInputs in;
  try {
    in.image = io::readRgb(job.image);
    if (job.edge) in.edges = edgeMapFromGray(io::readGray(*job.edge), in.image.width(), in.image.height());
    if (job.objectness) in.objectness = io::readGray(*job.objectness);
    const PipelineResult r = runPipeline(in, cfg);
    io::writeGray(outDir / (job.stem + "_saliency.png"), r.saliency);
    if (dump) dumpStages(r, outDir, job.stem);
  } catch (const std::exception& e) {
    return "warning: skipping " + job.image.string() + ": " + e.what();
  }
  return {};
}

// Runs jobs, prints warnings in input order, returns the success count.
int runJobs(const std::vector<ImageJob>& jobs, const PipelineConfig& cfg, const fs::path& outDir,
            bool dump, int threads, std::ostream& log) {
  std::vector<std::string> warnings(jobs.size());
  parallelFor(jobs.size(), threads,
              [&](std::size_t i) { warnings[i] = runJob(jobs[i], cfg, outDir, dump); });
  int ok = 0;
  for (const std::string& w : warnings) {
    if (w.empty()) {
      ++ok;
    } else {
      log << w << '\n';
    }
  }
  return ok;
}

std::vector<fs::path> listImages(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && io::isImageFile(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::optional<fs::path> companion(const std::optional<fs::path>& dir, const std::string& stem) {
  if (!dir) return std::nullopt;
  const fs::path p = *dir / (stem + ".png");
  if (fs::exists(p)) return p;
  return std::nullopt;
}

// stem -> path; throws on stem collisions.
std::map<std::string, fs::path> indexByStem(const fs::path& dir, std::string_view dropSuffix) {
  std::map<std::string, fs::path> index;
  for (const fs::path& p : listImages(dir)) {
    std::string stem = p.stem().string();
    if (!dropSuffix.empty() && stem.size() > dropSuffix.size() && stem.ends_with(dropSuffix)) {
      stem.resize(stem.size() - dropSuffix.size());
    }
    if (!index.emplace(stem, p).second) {
      throw std::invalid_argument("filename stem collision for '" + stem + "' in " + dir.string());
    }
  }
  return index;
}

ImageMetrics evaluatePair(const std::string& id, const fs::path& pred, const fs::path& gt) {
  const GrayImage s = io::readGray(pred);
  const GroundTruth g = binarizeGroundTruth(io::readGray(gt));
  return evaluateImage(id, s, g);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

int detect(const DetectOptions& opts, std::ostream& log) {
  if (!fs::exists(opts.input)) {
    log << "error: input path does not exist: " << opts.input.string() << '\n';
    return kExitUsage;
  }
  try {
    validate(opts.config);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const auto& dir : {opts.edgeDir, opts.objectnessDir}) {
    if (dir && !fs::is_directory(*dir)) {
      log << "error: not a directory: " << dir->string() << '\n';
      return kExitUsage;
    }
  }

  std::vector<fs::path> images;
  if (fs::is_directory(opts.input)) {
    images = listImages(opts.input);
  } else {
    images.push_back(opts.input);
  }
  std::error_code ec;
  fs::create_directories(opts.output, ec);
  if (ec) {
    log << "error: cannot create output directory " << opts.output.string() << ": " << ec.message() << '\n';
    return kExitUsage;
  }

  std::vector<ImageJob> jobs;
  for (const fs::path& p : images) {
    ImageJob job{p, p.stem().string(), std::nullopt, std::nullopt};
    job.edge = companion(opts.edgeDir, job.stem);
    if (opts.edgeDir && !job.edge) log << "warning: no edge map for " << job.stem << ", using the gradient detector\n";
    job.objectness = companion(opts.objectnessDir, job.stem);
    jobs.push_back(std::move(job));
  }
  const int ok = runJobs(jobs, opts.config, opts.output, opts.dumpStages, opts.jobs, log);
  return ok > 0 ? kExitOk : kExitAllFailed;
}

int evaluate(const EvaluateOptions& opts, std::ostream& log, EvalReport* result) {
  for (const fs::path& d : {opts.predDir, opts.gtDir}) {
    if (!fs::is_directory(d)) {
      log << "error: not a directory: " << d.string() << '\n';
      return kExitUsage;
    }
  }
  std::map<std::string, fs::path> preds, gts;
  try {
    preds = indexByStem(opts.predDir, "_saliency");
    gts = indexByStem(opts.gtDir, "");
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::vector<std::pair<std::string, std::pair<fs::path, fs::path>>> pairs;
  for (const auto& [stem, pred] : preds) {
    if (auto it = gts.find(stem); it != gts.end()) pairs.push_back({stem, {pred, it->second}});
  }
  if (pairs.empty()) {
    log << "error: no prediction/ground-truth pairs matched by filename stem\n";
    return kExitUsage;
  }
  std::vector<ImageMetrics> metrics;
  for (const auto& [stem, files] : pairs) {
    try {
      metrics.push_back(evaluatePair(stem, files.first, files.second));
    } catch (const std::exception& e) {
      log << "warning: skipping " << stem << ": " << e.what() << '\n';
    }
  }
  if (metrics.empty()) {
    log << "error: no pair could be evaluated\n";
    return kExitAllFailed;
  }
  EvalReport report = aggregate(std::move(metrics));
  writeReport(report, reportPaths(opts.report));
  if (result) *result = std::move(report);
  return kExitOk;
}

std::vector<DatasetPair> readManifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read manifest " + path.string());
  const fs::path base = path.parent_path();
  auto resolve = [&base](const std::string& s) {
    const fs::path p(s);
    return p.is_absolute() ? p : base / p;
  };
  std::string line;
  std::vector<DatasetPair> pairs;
  bool header = true;
  while (std::getline(in, line)) {
    if (trimmed(line).empty()) continue;
    if (header) {
      header = false;
      if (trimmed(line).starts_with("image")) continue;
    }
    auto fields = split(line, ',');
    for (auto& f : fields) f = trimmed(f);
    if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
      throw std::invalid_argument("manifest row needs image and gt: '" + line + "'");
    }
    DatasetPair p{resolve(fields[0]), resolve(fields[1]), std::nullopt, std::nullopt};
    if (fields.size() > 2 && !fields[2].empty()) p.edge = resolve(fields[2]);
    if (fields.size() > 3 && !fields[3].empty()) p.objectness = resolve(fields[3]);
    for (const auto& f : {std::optional<fs::path>(p.image), std::optional<fs::path>(p.groundTruth), p.edge, p.objectness}) {
      if (f && !fs::exists(*f)) throw std::invalid_argument("manifest references missing file " + f->string());
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<Variant> parseVariants(std::string_view list) {
  std::vector<Variant> variants;
  for (const std::string& rawToken : split(list, ',')) {
    const std::string token = trimmed(rawToken);
    if (token.empty()) continue;
    Variant v;
    v.name = token;
    if (token != "baseline") {
      for (const std::string& term : split(token, '+')) {
        const auto eq = term.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("variant term is not key=value: '" + term + "'");
        v.overrides.emplace_back(trimmed(term.substr(0, eq)), trimmed(term.substr(eq + 1)));
      }
      std::replace(v.name.begin(), v.name.end(), '=', '-');
      std::replace(v.name.begin(), v.name.end(), '+', '_');
    }
    variants.push_back(std::move(v));
  }
  return variants;
}

int ablate(const AblateOptions& opts, std::ostream& log, std::vector<VariantSummary>* result) {
  std::vector<Variant> variants;
  std::vector<DatasetPair> pairs;
  std::vector<PipelineConfig> configs;
  try {
    variants = parseVariants(opts.variants);
    if (variants.empty()) throw std::invalid_argument("empty variant grid");
    pairs = readManifest(opts.manifest);
    if (pairs.empty()) throw std::invalid_argument("manifest lists no images");
    for (const Variant& v : variants) {
      PipelineConfig cfg = opts.base;
      for (const auto& [key, value] : v.overrides) applySetting(cfg, key, value);
      validate(cfg);
      configs.push_back(cfg);
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::vector<ImageJob> jobs;
  std::map<std::string, int> seen;
  for (const DatasetPair& p : pairs) {
    const std::string stem = p.image.stem().string();
    if (seen[stem]++ > 0) {
      log << "error: filename stem collision for '" << stem << "' in manifest\n";
      return kExitUsage;
    }
    jobs.push_back({p.image, stem, p.edge, p.objectness});
  }

  std::vector<VariantSummary> summaries;
  for (std::size_t k = 0; k < variants.size(); ++k) {
    const fs::path dir = opts.out / variants[k].name;
    fs::create_directories(dir);
    runJobs(jobs, configs[k], dir, false, opts.jobs, log);
    std::vector<ImageMetrics> metrics;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const fs::path pred = dir / (jobs[i].stem + "_saliency.png");
      if (!fs::exists(pred)) continue;
      try {
        metrics.push_back(evaluatePair(jobs[i].stem, pred, pairs[i].groundTruth));
      } catch (const std::exception& e) {
        log << "warning: skipping " << jobs[i].stem << ": " << e.what() << '\n';
      }
    }
    if (metrics.empty()) {
      log << "error: variant " << variants[k].name << " produced no evaluable output\n";
      return kExitAllFailed;
    }
    EvalReport report = aggregate(std::move(metrics));
    writeReport(report, reportPaths(dir / "report.csv"));
    summaries.push_back({variants[k].name, configs[k], std::move(report)});
  }

  std::ofstream overview(opts.out / "ablation.csv");
  overview << "variant,meanMaxF,meanMAE,meanAUC,imageCount\n";
  for (const VariantSummary& s : summaries) {
    overview << s.name << ',' << format(s.report.meanMaxF) << ',' << format(s.report.meanMAE) << ','
             << format(s.report.meanAUC) << ',' << s.report.imageCount << '\n';
  }
  if (result) *result = std::move(summaries);
  return kExitOk;
}

void dumpStages(const PipelineResult& r, const fs::path& dir, const std::string& stem) {
  const SuperpixelMap& sp = r.superpixels;
  const int n = sp.count();
  const auto png = [&](const std::string& tag, const GrayImage& img) {
    io::writeGray(dir / (stem + "_" + tag + ".png"), img);
  };
  NodeScores fgMask = NodeScores::Zero(n);
  for (int m : r.foreground.members) fgMask[m] = 1.0;
  png("div", renderSaliency(r.divergence.div, sp.labels));
  png("conbp", renderSaliency(r.conBp, sp.labels));
  png("rare", renderSaliency(r.rare, sp.labels));
  png("fgmask", renderBinary(r.foreground.members, sp));
  png("confp", renderSaliency(r.conFp, sp.labels));
  png("scom", renderSaliency(r.sCom, sp.labels));
  png("final", r.saliency);
  io::writeLabels(dir / (stem + "_labels.png"), sp.labels);

  std::vector<std::uint8_t> bgSeed(n, 0);
  for (int s : r.backgroundSeeds.members) bgSeed[s] = 1;
  std::ofstream csv(dir / (stem + "_stages.csv"));
  csv << "superpixel,divC,divM,div,bgSeed,geoBg,conbp,rare,fgmask,geoFg,confp,scom,delta,cluster,final\n";
  for (int i = 0; i < n; ++i) {
    csv << i << ',' << format(r.divergence.divC[i]) << ',' << format(r.divergence.divM[i]) << ','
        << format(r.divergence.div[i]) << ',' << int(bgSeed[i]) << ',' << format(r.backgroundGeodesic[i])
        << ',' << format(r.conBp[i]) << ',' << format(r.rare[i]) << ',' << int(fgMask[i] > 0.5) << ','
        << format(r.foregroundGeodesic[i]) << ',' << format(r.conFp[i]) << ',' << format(r.sCom[i]) << ','
        << int(r.gate.delta[i]) << ',' << r.clusters[i] << ',' << format(r.final[i]) << '\n';
  }

  std::ofstream aff(dir / (stem + "_affinity.csv"));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aff << (j ? "," : "") << format(r.affinity.A(i, j));
    aff << '\n';
  }
  if (!csv || !aff) throw std::runtime_error("cannot write stage dumps for " + stem);
}

}  // namespace salgraph::batch
