#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "salgraph/evaluation.hpp"
#include "support.hpp"

namespace salgraph {
namespace {

GrayImage grayFrom(int w, int h, std::initializer_list<int> v) {
  GrayImage g(w, h);
  std::size_t i = 0;
  for (int x : v) g[i++] = static_cast<std::uint8_t>(x);
  return g;
}

GroundTruth truthFrom(int w, int h, std::initializer_list<int> v) {
  GroundTruth g(w, h);
  std::size_t i = 0;
  for (int x : v) g[i++] = static_cast<std::uint8_t>(x);
  return g;
}

// Probability that a random positive outranks a random negative, ties half.
double pairwiseAuc(const GrayImage& s, const GroundTruth& g) {
  double wins = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!g[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (g[j]) continue;
      pairs += 1.0;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

TEST(PrecisionRecall, PerfectMap) {
  const GroundTruth g = truthFrom(2, 2, {1, 0, 0, 1});
  const GrayImage s = grayFrom(2, 2, {255, 0, 0, 255});
  for (int t = 1; t <= 255; ++t) {
    const PrecisionRecall pr = prAtThreshold(s, g, t);
    EXPECT_EQ(pr.precision, 1.0);
    EXPECT_EQ(pr.recall, 1.0);
  }
}

TEST(PrecisionRecall, ZeroThresholdPredictsEverything) {
  const GroundTruth g = truthFrom(4, 1, {1, 0, 0, 0});
  const PrecisionRecall pr = prAtThreshold(grayFrom(4, 1, {3, 9, 0, 200}), g, 0);
  EXPECT_EQ(pr.recall, 1.0);
  EXPECT_EQ(pr.precision, 0.25);
}

TEST(PrecisionRecall, HandCounted4x4) {
  const GrayImage s = grayFrom(4, 4, {200, 200, 10, 10,  //
                                      200, 90, 10, 10,   //
                                      90, 90, 200, 10,   //
                                      10, 10, 10, 10});
  const GroundTruth g = truthFrom(4, 4, {1, 1, 0, 0,  //
                                         1, 1, 0, 0,  //
                                         1, 0, 0, 0,  //
                                         0, 0, 0, 0});
  // t=100: predicted {0,1,4,10}; TP 3, FP 1, FN 2.
  PrecisionRecall pr = prAtThreshold(s, g, 100);
  EXPECT_DOUBLE_EQ(pr.precision, 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(pr.recall, 3.0 / 5.0);
  // t=50: adds {5,8,9}; TP 5, FP 2, FN 0.
  pr = prAtThreshold(s, g, 50);
  EXPECT_DOUBLE_EQ(pr.precision, 5.0 / 7.0);
  EXPECT_DOUBLE_EQ(pr.recall, 1.0);
  // t=255: nothing predicted.
  pr = prAtThreshold(s, g, 255);
  EXPECT_EQ(pr.precision, 1.0);
  EXPECT_EQ(pr.recall, 0.0);
}

TEST(FMeasure, Values) {
  EXPECT_NEAR(fMeasure(0.5, 0.5), 0.5, 1e-12);
  EXPECT_EQ(fMeasure(0.7, 0.0), 0.0);
  EXPECT_EQ(fMeasure(0.0, 0.0), 0.0);
  EXPECT_NEAR(fMeasure(0.9, 0.6), 0.806897, 1e-6);
  EXPECT_NEAR(fMeasure(0.9, 0.6), 1.3 * 0.54 / 0.87, 1e-12);
}

TEST(Mae, Fixtures) {
  const GroundTruth g = truthFrom(2, 2, {0, 0, 1, 1});
  EXPECT_EQ(mae(grayFrom(2, 2, {0, 0, 255, 255}), g), 0.0);
  EXPECT_EQ(mae(grayFrom(2, 2, {255, 255, 0, 0}), g), 1.0);
  EXPECT_NEAR(mae(grayFrom(2, 2, {0, 51, 204, 255}), g), 0.1, 1e-12);
}

TEST(Mae, InvariantUnderJointInversion) {
  testing::Gen gen(61);
  GrayImage s(9, 7), inv(9, 7);
  GroundTruth g(9, 7), ginv(9, 7);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = static_cast<std::uint8_t>(gen.integer(0, 255));
    inv[i] = static_cast<std::uint8_t>(255 - s[i]);
    g[i] = gen.coin() ? 1 : 0;
    ginv[i] = 1 - g[i];
  }
  EXPECT_NEAR(mae(s, g), mae(inv, ginv), 1e-12);
}

TEST(Auc, Fixtures) {
  const GroundTruth g = truthFrom(2, 2, {1, 0, 0, 1});
  EXPECT_DOUBLE_EQ(rocAuc(grayFrom(2, 2, {255, 0, 0, 255}), g), 1.0);
  EXPECT_DOUBLE_EQ(rocAuc(grayFrom(2, 2, {77, 77, 77, 77}), g), 0.5);
  EXPECT_DOUBLE_EQ(rocAuc(grayFrom(2, 2, {0, 255, 255, 0}), g), 0.0);
}

TEST(Auc, EightPixelsMatchPairwiseRanking) {
  const GrayImage s = grayFrom(8, 1, {250, 120, 120, 30, 200, 120, 10, 125});
  const GroundTruth g = truthFrom(8, 1, {1, 1, 0, 1, 0, 0, 0, 1});
  // Positives {250,120,30,125}, negatives {120,200,120,10}: 4 + 2 + 1 + 3 wins of 16.
  EXPECT_NEAR(pairwiseAuc(s, g), 10.0 / 16.0, 1e-15);
  EXPECT_NEAR(rocAuc(s, g), 10.0 / 16.0, 1e-12);
}

TEST(Auc, RandomMapsMatchPairwiseRanking) {
  testing::Gen gen(62);
  for (int trial = 0; trial < 40; ++trial) {
    GrayImage s(12, 10);
    GroundTruth g(12, 10);
    const int levels = gen.integer(2, 256);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = static_cast<std::uint8_t>(gen.integer(0, levels - 1));
      g[i] = gen.coin(0.3) ? 1 : 0;
    }
    g[0] = 1;
    g[1] = 0;
    EXPECT_NEAR(rocAuc(s, g), pairwiseAuc(s, g), 1e-12);
  }
}

TEST(Auc, DegenerateTruthIsFlagged) {
  const GrayImage s = grayFrom(2, 2, {1, 2, 3, 4});
  EXPECT_EQ(rocAuc(s, truthFrom(2, 2, {0, 0, 0, 0})), 1.0);
  const ImageMetrics m = evaluateImage("empty", s, truthFrom(2, 2, {0, 0, 0, 0}));
  EXPECT_TRUE(m.degenerateGroundTruth);
  EXPECT_FALSE(evaluateImage("ok", s, truthFrom(2, 2, {0, 1, 0, 0})).degenerateGroundTruth);
}

TEST(Curve, MonotoneAndMaxFDominates) {
  testing::Gen gen(63);
  for (int trial = 0; trial < 20; ++trial) {
    GrayImage s(16, 16);
    GroundTruth g(16, 16);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = static_cast<std::uint8_t>(gen.integer(0, 255));
      g[i] = gen.coin(0.4) ? 1 : 0;
    }
    const ImageMetrics m = evaluateImage("r", s, g);
    for (int t = 0; t < kThresholdCount; ++t) {
      const PrecisionRecall pr = prAtThreshold(s, g, t);
      EXPECT_DOUBLE_EQ(m.curve[t].precision, pr.precision);
      EXPECT_DOUBLE_EQ(m.curve[t].recall, pr.recall);
      EXPECT_GE(m.maxF, fMeasure(pr.precision, pr.recall));
      if (t > 0) {
        EXPECT_LE(m.curve[t].recall, m.curve[t - 1].recall);
        EXPECT_LE(m.curve[t].fpr, m.curve[t - 1].fpr);
      }
    }
  }
}

TEST(GroundTruth, BinarizesAtMidGrey) {
  const GroundTruth g = binarizeGroundTruth(grayFrom(4, 1, {0, 127, 128, 255}));
  EXPECT_EQ(g, truthFrom(4, 1, {0, 0, 1, 1}));
}

TEST(Report, PlainMeansAndFiles) {
  const GroundTruth g = truthFrom(2, 2, {0, 0, 1, 1});
  std::vector<ImageMetrics> per;
  per.push_back(evaluateImage("a", grayFrom(2, 2, {0, 0, 255, 255}), g));
  per.push_back(evaluateImage("b", grayFrom(2, 2, {255, 255, 0, 0}), g));
  const EvalReport r = aggregate(per);
  EXPECT_EQ(r.imageCount, 2);
  EXPECT_DOUBLE_EQ(r.meanMAE, 0.5);
  EXPECT_DOUBLE_EQ(r.meanMaxF, (per[0].maxF + per[1].maxF) / 2.0);
  EXPECT_DOUBLE_EQ(r.meanAUC, 0.5);
  for (int t = 0; t < kThresholdCount; ++t)
    EXPECT_DOUBLE_EQ(r.meanCurve[t].recall, (per[0].curve[t].recall + per[1].curve[t].recall) / 2.0);

  const auto dir = std::filesystem::temp_directory_path() / "salgraph_report_test";
  std::filesystem::remove_all(dir);
  const ReportPaths paths = reportPaths(dir / "report.csv");
  EXPECT_EQ(paths.curves.filename(), "report_curves.csv");
  EXPECT_EQ(paths.summary.filename(), "report_summary.json");
  writeReport(r, paths);
  std::ifstream in(paths.summary);
  const auto j = nlohmann::json::parse(in);
  EXPECT_DOUBLE_EQ(j.at("meanMAE").get<double>(), 0.5);
  EXPECT_EQ(j.at("imageCount").get<int>(), 2);
  EXPECT_TRUE(j.contains("referenceExpectation"));
  std::ifstream csv(paths.perImage);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "image,maxF,mae,auc");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace salgraph
