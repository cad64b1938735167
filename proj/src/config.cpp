#include "salgraph/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace salgraph {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(std::string_view key, std::string_view value) {
  throw std::invalid_argument("invalid value '" + std::string(value) + "' for " + std::string(key));
}

double toDouble(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad(key, value);
  return v;
}

int toInt(std::string_view key, std::string_view value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad(key, value);
  return v;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string toString(EdgeWeightMode m) {
  switch (m) {
    case EdgeWeightMode::Color: return "color";
    case EdgeWeightMode::ColorSpatial: return "colorSpatial";
    case EdgeWeightMode::Full: return "full";
  }
  return "full";
}

std::string toString(SeedMode m) { return m == SeedMode::AllBorder ? "allBorder" : "filtered"; }

std::string toString(RefineMode m) {
  switch (m) {
    case RefineMode::None: return "none";
    case RefineMode::MrOnly: return "mrOnly";
    case RefineMode::MidlevelOnly: return "midlevelOnly";
    case RefineMode::GateOnly: return "gateOnly";
    case RefineMode::Full: return "full";
  }
  return "full";
}

std::string toString(Laplacian m) {
  return m == Laplacian::Normalized ? "normalized" : "unnormalized";
}

void validate(const PipelineConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid configuration: ") + what);
  };
  require(c.nSuperpixels >= 1, "nSuperpixels must be >= 1");
  require(c.sigmaW > 0.0, "sigmaW must be > 0");
  require(c.beta >= 0.0 && c.beta <= 1.0, "beta must lie in [0,1]");
  require(c.phi > 0.0, "phi must be > 0");
  require(c.kappa > 0.0, "kappa must be > 0");
  require(c.mu > 0.0, "mu must be > 0");
  require(c.tauC >= 0.0, "tauC must be >= 0");
  require(c.etaMax >= c.etaMin, "etaMax must be >= etaMin");
  require(c.etaSteps >= 1, "etaSteps must be >= 1");
  require(c.slicCompactness > 0.0, "slicCompactness must be > 0");
  require(c.slicIterations >= 1, "slicIterations must be >= 1");
}

void applySetting(PipelineConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "nSuperpixels") c.nSuperpixels = toInt(key, value);
  else if (key == "sigmaW") c.sigmaW = toDouble(key, value);
  else if (key == "beta") c.beta = toDouble(key, value);
  else if (key == "phi") c.phi = toDouble(key, value);
  else if (key == "kappa") c.kappa = toDouble(key, value);
  else if (key == "mu") c.mu = toDouble(key, value);
  else if (key == "tauC") c.tauC = toDouble(key, value);
  else if (key == "etaMax") c.etaMax = toDouble(key, value);
  else if (key == "etaMin") c.etaMin = toDouble(key, value);
  else if (key == "etaSteps") c.etaSteps = toInt(key, value);
  else if (key == "slicCompactness") c.slicCompactness = toDouble(key, value);
  else if (key == "slicIterations") c.slicIterations = toInt(key, value);
  else if (key == "edgeWeights") {
    if (value == "color") c.edgeWeights = EdgeWeightMode::Color;
    else if (value == "colorSpatial") c.edgeWeights = EdgeWeightMode::ColorSpatial;
    else if (value == "full") c.edgeWeights = EdgeWeightMode::Full;
    else bad(key, value);
  } else if (key == "seeds") {
    if (value == "allBorder") c.seeds = SeedMode::AllBorder;
    else if (value == "filtered") c.seeds = SeedMode::Filtered;
    else bad(key, value);
  } else if (key == "refine") {
    if (value == "none") c.refine = RefineMode::None;
    else if (value == "mrOnly") c.refine = RefineMode::MrOnly;
    else if (value == "midlevelOnly") c.refine = RefineMode::MidlevelOnly;
    else if (value == "gateOnly") c.refine = RefineMode::GateOnly;
    else if (value == "full") c.refine = RefineMode::Full;
    else bad(key, value);
  } else if (key == "laplacian") {
    if (value == "normalized") c.laplacian = Laplacian::Normalized;
    else if (value == "unnormalized") c.laplacian = Laplacian::Unnormalized;
    else bad(key, value);
  } else {
    throw std::invalid_argument("unknown configuration key '" + std::string(key) + "'");
  }
}

PipelineConfig parseConfig(std::string_view text, PipelineConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineNo) + " is not key=value");
    }
    applySetting(base, view.substr(0, eq), view.substr(eq + 1));
  }
  validate(base);
  return base;
}

PipelineConfig loadConfig(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parseConfig(text.str(), base);
}

std::string formatConfig(const PipelineConfig& c) {
  std::ostringstream out;
  out << "nSuperpixels=" << c.nSuperpixels << '\n'
      << "sigmaW=" << shortest(c.sigmaW) << '\n'
      << "beta=" << shortest(c.beta) << '\n'
      << "phi=" << shortest(c.phi) << '\n'
      << "kappa=" << shortest(c.kappa) << '\n'
      << "mu=" << shortest(c.mu) << '\n'
      << "tauC=" << shortest(c.tauC) << '\n'
      << "etaMax=" << shortest(c.etaMax) << '\n'
      << "etaMin=" << shortest(c.etaMin) << '\n'
      << "etaSteps=" << c.etaSteps << '\n'
      << "slicCompactness=" << shortest(c.slicCompactness) << '\n'
      << "slicIterations=" << c.slicIterations << '\n'
      << "edgeWeights=" << toString(c.edgeWeights) << '\n'
      << "seeds=" << toString(c.seeds) << '\n'
      << "refine=" << toString(c.refine) << '\n'
      << "laplacian=" << toString(c.laplacian) << '\n';
  return out.str();
}

}  // namespace salgraph
