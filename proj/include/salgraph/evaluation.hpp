#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "salgraph/image.hpp"

namespace salgraph {

/// Binary ground truth with values in {0,1}.
using GroundTruth = Grid<std::uint8_t>;

inline constexpr int kThresholdCount = 256;
inline constexpr double kDefaultBeta2 = 0.3;

GroundTruth binarizeGroundTruth(const GrayImage& gt, int threshold = 128);

struct PrecisionRecall {
  double precision = 1.0;
  double recall = 1.0;
};

/// Binarizes the saliency map at value >= t. Precision is 1 when nothing is
/// predicted; recall is 1 when the ground truth is empty.
PrecisionRecall prAtThreshold(const GrayImage& saliency, const GroundTruth& gt, int t);

/// Weighted harmonic mean; 0 when the denominator vanishes.
double fMeasure(double precision, double recall, double beta2 = kDefaultBeta2);

/// Mean |S/255 - G| over all pixels.
double mae(const GrayImage& saliency, const GroundTruth& gt);

/// Trapezoidal area under the ROC curve over thresholds 0..255, anchored at
/// (0,0) and (1,1). Ground truth without positives or negatives yields 1.
double rocAuc(const GrayImage& saliency, const GroundTruth& gt);

struct CurvePoint {
  double precision = 1.0;
  double recall = 1.0;
  double fpr = 0.0;
  double tpr = 1.0;
};
using Curve = std::array<CurvePoint, kThresholdCount>;

struct ImageMetrics {
  std::string imageId;
  double maxF = 0.0;
  double mae = 0.0;
  double auc = 0.0;
  bool degenerateGroundTruth = false;  ///< AUC was defined, not measured
  Curve curve{};
};

ImageMetrics evaluateImage(std::string imageId, const GrayImage& saliency, const GroundTruth& gt);

struct EvalReport {
  std::vector<ImageMetrics> perImage;
  Curve meanCurve{};
  double meanMaxF = 0.0;
  double meanMAE = 0.0;
  double meanAUC = 0.0;
  int imageCount = 0;
};

/// Plain means over images; the mean curve averages each threshold's point.
EvalReport aggregate(std::vector<ImageMetrics> perImage);

struct ReportPaths {
  std::filesystem::path perImage;  ///< image,maxF,mae,auc
  std::filesystem::path curves;    ///< threshold,precision,recall,fpr,tpr
  std::filesystem::path summary;   ///< JSON aggregates
};

/// `report.csv` -> report.csv, report_curves.csv, report_summary.json.
ReportPaths reportPaths(const std::filesystem::path& report);

void writeReport(const EvalReport& report, const ReportPaths& paths);

}  // namespace salgraph
