#include "salgraph/evaluation.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "json.hpp"

namespace salgraph {
namespace {

void requireSameShape(const GrayImage& s, const GroundTruth& g) {
  if (!s.sameShape(g)) throw std::invalid_argument("saliency map and ground truth differ in size");
}

struct Counts {
  std::array<std::int64_t, kThresholdCount> positive{};
  std::array<std::int64_t, kThresholdCount> negative{};
  std::int64_t totalPositive = 0;
  std::int64_t totalNegative = 0;
};

Counts countByValue(const GrayImage& s, const GroundTruth& g) {
  requireSameShape(s, g);
  Counts c;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (g[i]) {
      ++c.positive[s[i]];
      ++c.totalPositive;
    } else {
      ++c.negative[s[i]];
      ++c.totalNegative;
    }
  }
  return c;
}

// Point for every threshold from cumulative counts of values >= t.
Curve curveFromCounts(const Counts& c) {
  Curve curve{};
  std::int64_t tp = 0, fp = 0;
  for (int t = kThresholdCount - 1; t >= 0; --t) {
    tp += c.positive[t];
    fp += c.negative[t];
    CurvePoint& p = curve[t];
    p.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 1.0;
    p.recall = c.totalPositive > 0 ? static_cast<double>(tp) / c.totalPositive : 1.0;
    p.tpr = p.recall;
    p.fpr = c.totalNegative > 0 ? static_cast<double>(fp) / c.totalNegative : 0.0;
  }
  return curve;
}

double aucFromCurve(const Curve& curve) {
  // Walk thresholds from high to low: (0,0) -> ... -> (1,1).
  double area = 0.0, prevFpr = 0.0, prevTpr = 0.0;
  for (int t = kThresholdCount - 1; t >= 0; --t) {
    area += (curve[t].fpr - prevFpr) * (curve[t].tpr + prevTpr) / 2.0;
    prevFpr = curve[t].fpr;
    prevTpr = curve[t].tpr;
  }
  area += (1.0 - prevFpr) * (1.0 + prevTpr) / 2.0;
  return area;
}

}  // namespace

GroundTruth binarizeGroundTruth(const GrayImage& gt, int threshold) {
  GroundTruth out(gt.width(), gt.height());
  for (std::size_t i = 0; i < gt.size(); ++i) out[i] = gt[i] >= threshold ? 1 : 0;
  return out;
}

PrecisionRecall prAtThreshold(const GrayImage& saliency, const GroundTruth& gt, int t) {
  requireSameShape(saliency, gt);
  std::int64_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < saliency.size(); ++i) {
    const bool predicted = saliency[i] >= t;
    const bool actual = gt[i] != 0;
    tp += predicted && actual;
    fp += predicted && !actual;
    fn += !predicted && actual;
  }
  PrecisionRecall pr;
  pr.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 1.0;
  pr.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 1.0;
  return pr;
}

double fMeasure(double precision, double recall, double beta2) {
  const double denom = beta2 * precision + recall;
  return denom > 0.0 ? (1.0 + beta2) * precision * recall / denom : 0.0;
}

double mae(const GrayImage& saliency, const GroundTruth& gt) {
  requireSameShape(saliency, gt);
  if (saliency.empty()) throw std::invalid_argument("empty saliency map");
  double sum = 0.0;
  for (std::size_t i = 0; i < saliency.size(); ++i) {
    sum += std::abs(saliency[i] / 255.0 - static_cast<double>(gt[i] != 0));
  }
  return sum / static_cast<double>(saliency.size());
}

double rocAuc(const GrayImage& saliency, const GroundTruth& gt) {
  const Counts c = countByValue(saliency, gt);
  if (c.totalPositive == 0 || c.totalNegative == 0) return 1.0;
  return aucFromCurve(curveFromCounts(c));
}

ImageMetrics evaluateImage(std::string imageId, const GrayImage& saliency, const GroundTruth& gt) {
  const Counts c = countByValue(saliency, gt);
  ImageMetrics m;
  m.imageId = std::move(imageId);
  m.curve = curveFromCounts(c);
  m.degenerateGroundTruth = c.totalPositive == 0 || c.totalNegative == 0;
  m.auc = m.degenerateGroundTruth ? 1.0 : aucFromCurve(m.curve);
  for (const CurvePoint& p : m.curve) m.maxF = std::max(m.maxF, fMeasure(p.precision, p.recall));
  m.mae = mae(saliency, gt);
  return m;
}

EvalReport aggregate(std::vector<ImageMetrics> perImage) {
  EvalReport r;
  r.imageCount = static_cast<int>(perImage.size());
  r.perImage = std::move(perImage);
  for (CurvePoint& p : r.meanCurve) p = {0.0, 0.0, 0.0, 0.0};
  if (r.imageCount == 0) return r;
  for (const ImageMetrics& m : r.perImage) {
    r.meanMaxF += m.maxF;
    r.meanMAE += m.mae;
    r.meanAUC += m.auc;
    for (int t = 0; t < kThresholdCount; ++t) {
      r.meanCurve[t].precision += m.curve[t].precision;
      r.meanCurve[t].recall += m.curve[t].recall;
      r.meanCurve[t].fpr += m.curve[t].fpr;
      r.meanCurve[t].tpr += m.curve[t].tpr;
    }
  }
  const double n = r.imageCount;
  r.meanMaxF /= n;
  r.meanMAE /= n;
  r.meanAUC /= n;
  for (CurvePoint& p : r.meanCurve) {
    p.precision /= n;
    p.recall /= n;
    p.fpr /= n;
    p.tpr /= n;
  }
  return r;
}

ReportPaths reportPaths(const std::filesystem::path& report) {
  const auto dir = report.parent_path();
  const auto stem = report.stem().string();
  return {report, dir / (stem + "_curves.csv"), dir / (stem + "_summary.json")};
}

void writeReport(const EvalReport& report, const ReportPaths& paths) {
  auto open = [](const std::filesystem::path& p) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << std::setprecision(10);
    return out;
  };

  {
    auto out = open(paths.perImage);
    out << "image,maxF,mae,auc\n";
    for (const ImageMetrics& m : report.perImage) {
      out << m.imageId << ',' << m.maxF << ',' << m.mae << ',' << m.auc << '\n';
    }
  }
  {
    auto out = open(paths.curves);
    out << "threshold,precision,recall,fpr,tpr\n";
    for (int t = 0; t < kThresholdCount; ++t) {
      const CurvePoint& p = report.meanCurve[t];
      out << t << ',' << p.precision << ',' << p.recall << ',' << p.fpr << ',' << p.tpr << '\n';
    }
  }
  {
    nlohmann::ordered_json j;
    j["meanMaxF"] = report.meanMaxF;
    j["meanMAE"] = report.meanMAE;
    j["meanAUC"] = report.meanAUC;
    j["imageCount"] = report.imageCount;
    nlohmann::json degenerate = nlohmann::json::array();
    for (const ImageMetrics& m : report.perImage) {
      if (m.degenerateGroundTruth) degenerate.push_back(m.imageId);
    }
    j["degenerateAucImages"] = degenerate;
    j["conventions"] = {
        {"binarization", "saliency >= threshold, thresholds 0..255"},
        {"emptyPredictionPrecision", 1.0},
        {"beta2", kDefaultBeta2},
        {"aggregation", "plain mean over images"},
        {"groundTruthThreshold", 128},
    };
    j["referenceExpectation"] =
        "non-gating: on ASD-style single-object benchmarks expect meanMaxF >= 0.85";
    auto out = open(paths.summary);
    out << j.dump(2) << '\n';
  }
}

}  // namespace salgraph
