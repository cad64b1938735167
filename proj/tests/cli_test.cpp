#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "salgraph/batch.hpp"
#include "salgraph/io.hpp"
#include "salgraph/refine.hpp"
#include "salgraph/synthetic.hpp"

namespace fs = std::filesystem;

namespace salgraph {
namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(SALIENCY_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("salgraph_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& rel) const { return (dir_ / rel).string(); }

  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST_F(Cli, SingleImage) {
  const auto corpus = syntheticCorpus(1);
  io::writeRgb(path("one.png"), corpus[0].image);
  EXPECT_EQ(run("detect --input " + path("one.png") + " --output " + path("out")), 0);
  EXPECT_TRUE(fs::exists(path("out/one_saliency.png")));
}

TEST_F(Cli, MissingInputIsAUsageError) {
  EXPECT_EQ(run("detect --input " + path("nope") + " --output " + path("out")), 2);
  EXPECT_EQ(run("detect --output " + path("out")), 2);
  EXPECT_EQ(run("detect --input " + path("nope") + " --output " + path("out") + " --set sigmaW=-1"), 2);
}

TEST_F(Cli, CorruptImageIsSkipped) {
  const auto corpus = syntheticCorpus(4);
  fs::create_directories(path("in"));
  for (int k = 0; k < 4; ++k) io::writeRgb(path("in/img" + std::to_string(k) + ".png"), corpus[k].image);
  std::ofstream(path("in/broken.png")) << "not an image";
  EXPECT_EQ(run("detect --input " + path("in") + " --output " + path("out")), 0);
  int outputs = 0;
  for (const auto& e : fs::directory_iterator(path("out"))) outputs += e.path().extension() == ".png";
  EXPECT_EQ(outputs, 4);
  EXPECT_FALSE(fs::exists(path("out/broken_saliency.png")));

  fs::create_directories(path("allbad"));
  std::ofstream(path("allbad/x.png")) << "garbage";
  EXPECT_EQ(run("detect --input " + path("allbad") + " --output " + path("out2")), 3);
}

TEST_F(Cli, EvalIdentityAndInverted) {
  const auto corpus = syntheticCorpus(3);
  fs::create_directories(path("gt"));
  fs::create_directories(path("pred"));
  fs::create_directories(path("inv"));
  for (int k = 0; k < 3; ++k) {
    const std::string name = "img" + std::to_string(k);
    io::writeGray(path("gt/" + name + ".png"), corpus[k].groundTruth);
    io::writeGray(path("pred/" + name + "_saliency.png"), corpus[k].groundTruth);
    GrayImage inv = corpus[k].groundTruth;
    for (auto& v : inv.values()) v = static_cast<std::uint8_t>(255 - v);
    io::writeGray(path("inv/" + name + ".png"), inv);
  }
  EvalReport same;
  std::ostringstream log;
  ASSERT_EQ(batch::evaluate({path("pred"), path("gt"), path("same.csv")}, log, &same), 0);
  EXPECT_EQ(same.imageCount, 3);
  EXPECT_DOUBLE_EQ(same.meanMaxF, 1.0);
  EXPECT_DOUBLE_EQ(same.meanMAE, 0.0);
  EXPECT_DOUBLE_EQ(same.meanAUC, 1.0);
  EXPECT_TRUE(fs::exists(path("same_curves.csv")));
  EXPECT_TRUE(fs::exists(path("same_summary.json")));

  EvalReport inverted;
  ASSERT_EQ(batch::evaluate({path("inv"), path("gt"), path("inv.csv")}, log, &inverted), 0);
  EXPECT_DOUBLE_EQ(inverted.meanMAE, 1.0);

  EXPECT_EQ(run("eval --pred " + path("pred") + " --gt " + path("gt") + " --report " + path("r.csv")), 0);
  EXPECT_EQ(run("eval --pred " + path("gt") + " --gt " + path("nothing") + " --report " + path("r.csv")), 2);
}

TEST_F(Cli, EvalHandFixture) {
  // Two 4x4 maps. a: perfect; b: one false positive at 255 and one missed pixel at 0.
  GrayImage gt(4, 4, 0), a(4, 4, 0), b(4, 4, 0);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) gt(x, y) = a(x, y) = b(x, y) = 255;
  b(3, 3) = 255;
  b(1, 1) = 0;
  fs::create_directories(path("gt"));
  fs::create_directories(path("pred"));
  io::writeGray(path("gt/a.png"), gt);
  io::writeGray(path("gt/b.png"), gt);
  io::writeGray(path("pred/a.png"), a);
  io::writeGray(path("pred/b.png"), b);
  EvalReport r;
  std::ostringstream log;
  ASSERT_EQ(batch::evaluate({path("pred"), path("gt"), path("fix.csv")}, log, &r), 0);
  // b: best threshold keeps 4 predicted with 3 hits -> P = R = 0.75; at t=0 P = 0.25, R = 1.
  const double fb = std::max(0.75, 1.3 * 0.25 / (0.3 * 0.25 + 1.0));
  EXPECT_NEAR(r.meanMaxF, (1.0 + fb) / 2.0, 1e-6);
  EXPECT_NEAR(r.meanMAE, (0.0 + 2.0 / 16.0) / 2.0, 1e-6);
  // b: ROC points (0,0) -> (1/12, 3/4) -> (1,1).
  const double aucB = 0.5 * (1.0 / 12.0) * 0.75 + (11.0 / 12.0) * (0.75 + 1.0) / 2.0;
  EXPECT_NEAR(r.meanAUC, (1.0 + aucB) / 2.0, 1e-6);
}

TEST_F(Cli, AblateRejectsEmptyGrid) {
  writeSyntheticCorpus(dir_ / "syn", syntheticCorpus(1));
  EXPECT_EQ(run("ablate --manifest " + path("syn/manifest.csv") + " --variants '' --out " + path("abl")), 2);
  EXPECT_EQ(run("ablate --manifest " + path("syn/manifest.csv") + " --variants baseline --out " + path("abl")), 0);
  EXPECT_TRUE(fs::exists(path("abl/ablation.csv")));
  EXPECT_TRUE(fs::exists(path("abl/baseline/report_summary.json")));
}

TEST(Variants, Parsing) {
  const auto v = batch::parseVariants("baseline,edgeWeights=color,refine=none+seeds=allBorder");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0].name, "baseline");
  EXPECT_TRUE(v[0].overrides.empty());
  EXPECT_EQ(v[1].name, "edgeWeights-color");
  EXPECT_EQ(v[2].overrides.size(), 2u);
  EXPECT_EQ(v[2].name, "refine-none_seeds-allBorder");
  EXPECT_TRUE(batch::parseVariants("").empty());
}

TEST_F(Cli, StageDumpMatchesFinalMap) {
  const auto corpus = syntheticCorpus(1);
  io::writeRgb(path("s.png"), corpus[0].image);
  ASSERT_EQ(run("detect --input " + path("s.png") + " --output " + path("out") + " --dump-stages"), 0);
  const LabelMap labels = io::readLabels(path("out/s_labels.png"));
  std::ifstream csv(path("out/s_stages.csv"));
  std::string line;
  std::getline(csv, line);
  ASSERT_EQ(line.substr(line.rfind(',') + 1), "final");
  std::vector<double> final;
  while (std::getline(csv, line)) final.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  NodeScores f = Eigen::Map<NodeScores>(final.data(), static_cast<Eigen::Index>(final.size()));
  const GrayImage rendered = renderSaliency(f, labels);
  EXPECT_EQ(io::readGray(path("out/s_saliency.png")), rendered);
  EXPECT_EQ(io::readGray(path("out/s_final.png")), rendered);
  for (const char* stage : {"div", "conbp", "rare", "fgmask", "confp", "scom", "affinity"}) {
    const bool csvStage = std::string(stage) == "affinity";
    EXPECT_TRUE(fs::exists(path(std::string("out/s_") + stage + (csvStage ? ".csv" : ".png")))) << stage;
  }
}

TEST_F(Cli, ThreadCountDoesNotChangeOutput) {
  writeSyntheticCorpus(dir_ / "syn", syntheticCorpus(4));
  ASSERT_EQ(run("detect --input " + path("syn/images") + " --output " + path("j1") + " --jobs 1"), 0);
  ASSERT_EQ(run("detect --input " + path("syn/images") + " --output " + path("j4") + " --jobs 4"), 0);
  int compared = 0;
  for (const auto& e : fs::directory_iterator(path("j1"))) {
    EXPECT_EQ(slurp(e.path()), slurp(dir_ / "j4" / e.path().filename()));
    ++compared;
  }
  EXPECT_EQ(compared, 4);
}

TEST_F(Cli, ConfigFileAndOverrides) {
  const auto corpus = syntheticCorpus(1);
  io::writeRgb(path("c.png"), corpus[0].image);
  std::ofstream(path("cfg.txt")) << "refine=none\nnSuperpixels=120\n";
  EXPECT_EQ(run("detect --input " + path("c.png") + " --output " + path("o") + " --config " + path("cfg.txt") +
                " --set sigmaW=0.2"),
            0);
  std::ofstream(path("bad.txt")) << "nSuperpixels=many\n";
  EXPECT_EQ(run("detect --input " + path("c.png") + " --output " + path("o") + " --config " + path("bad.txt")), 2);
}

}  // namespace
}  // namespace salgraph
