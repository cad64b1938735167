#include "salgraph/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "salgraph/io.hpp"

namespace salgraph {
namespace {

// std::uniform_*_distribution is implementation-defined; map raw mt19937 output
// directly so the corpus is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * (engine_() / 4294967296.0); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint32_t>(hi - lo + 1)); }

 private:
  std::mt19937 engine_;
};

struct Color {
  double r, g, b;
};

Color randomColor(Rng& rng) { return {rng.uniform(0, 255), rng.uniform(0, 255), rng.uniform(0, 255)}; }

double distance(const Color& p, const Color& q) {
  return std::sqrt((p.r - q.r) * (p.r - q.r) + (p.g - q.g) * (p.g - q.g) + (p.b - q.b) * (p.b - q.b));
}

Color contrasting(Rng& rng, const std::vector<Color>& avoid) {
  for (;;) {
    const Color c = randomColor(rng);
    bool ok = true;
    for (const Color& a : avoid) ok = ok && distance(c, a) > 170.0;
    if (ok) return c;
  }
}

struct Shape {
  bool ellipse;
  double cx, cy, rx, ry;
  Color color;

  bool contains(int x, int y) const {
    const double dx = (x - cx) / rx, dy = (y - cy) / ry;
    return ellipse ? dx * dx + dy * dy <= 1.0 : std::abs(dx) <= 1.0 && std::abs(dy) <= 1.0;
  }
};

std::uint8_t toByte(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

std::vector<SyntheticSample> syntheticCorpus(int count, int width, int height, std::uint32_t seed) {
  if (width < kMinImageSide || height < kMinImageSide) throw std::invalid_argument("synthetic image too small");
  Rng rng(seed);
  std::vector<SyntheticSample> corpus;
  for (int k = 0; k < count; ++k) {
    const bool bottomCase = k == 5;
    const bool gradient = k % 2 == 1;
    const int shapeCount = (k % 4 == 3 && !bottomCase) ? 2 : 1;

    const Color bg0 = randomColor(rng);
    Color bg1 = bg0;
    if (gradient) {
      // A gentle ramp: the background stays one visual region.
      bg1 = {std::clamp(bg0.r + rng.uniform(-50, 50), 0.0, 255.0),
             std::clamp(bg0.g + rng.uniform(-50, 50), 0.0, 255.0),
             std::clamp(bg0.b + rng.uniform(-50, 50), 0.0, 255.0)};
    }
    const bool vertical = rng.integer(0, 1) == 1;

    std::vector<Shape> shapes;
    for (int s = 0; s < shapeCount; ++s) {
      Shape sh;
      sh.ellipse = rng.integer(0, 1) == 1;
      const double scale = shapeCount == 1 ? 1.0 : 0.7;
      sh.rx = rng.uniform(0.12, 0.22) * width * scale;
      sh.ry = rng.uniform(0.15, 0.28) * height * scale;
      if (shapeCount == 1) {
        sh.cx = width * rng.uniform(0.38, 0.62);
        sh.cy = height * rng.uniform(0.38, 0.62);
      } else {
        sh.cx = width * (s == 0 ? rng.uniform(0.25, 0.35) : rng.uniform(0.65, 0.75));
        sh.cy = height * rng.uniform(0.4, 0.6);
      }
      if (bottomCase) {
        sh.ellipse = false;
        sh.cy = height - sh.ry;  // bottom edge lands on the last row
      }
      std::vector<Color> avoid{bg0, bg1};
      for (const Shape& o : shapes) avoid.push_back(o.color);
      sh.color = contrasting(rng, avoid);
      shapes.push_back(sh);
    }

    SyntheticSample sample;
    char name[32];
    std::snprintf(name, sizeof name, "synth_%02d%s", k, bottomCase ? "_bottom" : "");
    sample.name = name;
    sample.touchesBottom = bottomCase;
    sample.image = RgbImage(width, height);
    sample.groundTruth = GrayImage(width, height, 0);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double t = gradient ? (vertical ? static_cast<double>(y) / (height - 1)
                                              : static_cast<double>(x) / (width - 1))
                                  : 0.0;
        Color c{bg0.r + t * (bg1.r - bg0.r), bg0.g + t * (bg1.g - bg0.g), bg0.b + t * (bg1.b - bg0.b)};
        for (const Shape& sh : shapes) {
          if (sh.contains(x, y)) {
            c = sh.color;
            sample.groundTruth(x, y) = 255;
          }
        }
        const double noise = rng.uniform(-3.0, 3.0);
        sample.image(x, y) = {toByte(c.r + noise), toByte(c.g + noise), toByte(c.b + noise)};
      }
    }
    corpus.push_back(std::move(sample));
  }
  return corpus;
}

void writeSyntheticCorpus(const std::filesystem::path& dir, const std::vector<SyntheticSample>& corpus) {
  std::filesystem::create_directories(dir / "images");
  std::filesystem::create_directories(dir / "gt");
  std::ofstream manifest(dir / "manifest.csv");
  if (!manifest) throw std::runtime_error("cannot write manifest in " + dir.string());
  manifest << "image,gt,edge,objectness\n";
  for (const SyntheticSample& s : corpus) {
    io::writeRgb(dir / "images" / (s.name + ".png"), s.image);
    io::writeGray(dir / "gt" / (s.name + ".png"), s.groundTruth);
    manifest << "images/" << s.name << ".png,gt/" << s.name << ".png,,\n";
  }
}

}  // namespace salgraph
