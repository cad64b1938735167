#include "salgraph/superpixels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace salgraph {
namespace {

struct Center {
  double L, a, b, x, y;
};

// 4-connected components in scan order.
struct Components {
  std::vector<int> id;        // per pixel
  std::vector<int> label;     // per component
  std::vector<int> size;      // per component
};

Components connectedComponents(const LabelMap& labels) {
  const int w = labels.width(), h = labels.height();
  Components c;
  c.id.assign(labels.size(), -1);
  std::vector<int> stack;
  for (int start = 0; start < static_cast<int>(labels.size()); ++start) {
    if (c.id[start] >= 0) continue;
    const int comp = static_cast<int>(c.label.size());
    const int lab = labels[start];
    int count = 0;
    c.id[start] = comp;
    stack.push_back(start);
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      ++count;
      const int x = p % w, y = p / w;
      const int nbr[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
      for (const auto& n : nbr) {
        if (n[0] < 0 || n[0] >= w || n[1] < 0 || n[1] >= h) continue;
        const int q = n[1] * w + n[0];
        if (c.id[q] < 0 && labels[q] == lab) {
          c.id[q] = comp;
          stack.push_back(q);
        }
      }
    }
    c.label.push_back(lab);
    c.size.push_back(count);
  }
  return c;
}

}  // namespace

SeedGrid seedGrid(int width, int height, int targetCount) {
  if (targetCount < 1) throw std::invalid_argument("superpixel count must be >= 1");
  if (width < 1 || height < 1) throw std::invalid_argument("empty image");
  SeedGrid g;
  const double aspect = static_cast<double>(width) / height;
  const double ideal = std::sqrt(targetCount * aspect);
  int bestError = std::numeric_limits<int>::max();
  for (int columns : {std::max(1, static_cast<int>(std::ceil(ideal))), std::max(1, static_cast<int>(ideal))}) {
    const int rows = std::max(1, static_cast<int>(std::lround(static_cast<double>(targetCount) / columns)));
    const int error = std::abs(columns * rows - targetCount);
    if (error < bestError) {
      bestError = error;
      g.columns = columns;
      g.rows = rows;
    }
  }
  g.stepX = static_cast<double>(width) / g.columns;
  g.stepY = static_cast<double>(height) / g.rows;
  if (g.stepX < 2.0 || g.stepY < 2.0) {
    throw std::invalid_argument("image too small for requested superpixel count");
  }
  return g;
}

LabelMap slicLabels(const LabImage& img, const SlicParams& params) {
  if (params.compactness <= 0.0) throw std::invalid_argument("compactness must be > 0");
  if (params.iterations < 1) throw std::invalid_argument("SLIC iterations must be >= 1");
  const int w = img.width(), h = img.height();
  const SeedGrid grid = seedGrid(w, h, params.targetCount);

  std::vector<Center> centers;
  centers.reserve(static_cast<std::size_t>(grid.columns) * grid.rows);
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.columns; ++c) {
      const double x = (c + 0.5) * grid.stepX - 0.5;
      const double y = (r + 0.5) * grid.stepY - 0.5;
      const Lab& px = img(std::clamp(static_cast<int>(std::lround(x)), 0, w - 1),
                          std::clamp(static_cast<int>(std::lround(y)), 0, h - 1));
      centers.push_back({px.L, px.a, px.b, x, y});
    }
  }

  // Pixels outside every search window keep their grid cell.
  LabelMap labels(w, h);
  for (int y = 0; y < h; ++y) {
    const int r = std::min(grid.rows - 1, static_cast<int>(y / grid.stepY));
    for (int x = 0; x < w; ++x) {
      const int c = std::min(grid.columns - 1, static_cast<int>(x / grid.stepX));
      labels(x, y) = r * grid.columns + c;
    }
  }

  const double spacing = std::sqrt(static_cast<double>(w) * h / centers.size());
  const double spatialWeight = (params.compactness / spacing) * (params.compactness / spacing);
  const int radius = static_cast<int>(std::ceil(std::max(grid.stepX, grid.stepY)));
  std::vector<double> dist(img.size());
  std::vector<Center> sums(centers.size());
  std::vector<int> counts(centers.size());

  for (int iter = 0; iter < params.iterations; ++iter) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const Center& ck = centers[k];
      const int x0 = std::max(0, static_cast<int>(std::floor(ck.x)) - radius);
      const int x1 = std::min(w - 1, static_cast<int>(std::ceil(ck.x)) + radius);
      const int y0 = std::max(0, static_cast<int>(std::floor(ck.y)) - radius);
      const int y1 = std::min(h - 1, static_cast<int>(std::ceil(ck.y)) + radius);
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const Lab& p = img(x, y);
          const double dl = p.L - ck.L, da = p.a - ck.a, db = p.b - ck.b;
          const double dx = x - ck.x, dy = y - ck.y;
          const double d = dl * dl + da * da + db * db + (dx * dx + dy * dy) * spatialWeight;
          const std::size_t i = static_cast<std::size_t>(y) * w + x;
          if (d < dist[i]) {
            dist[i] = d;
            labels[i] = static_cast<int>(k);
          }
        }
      }
    }

    std::fill(sums.begin(), sums.end(), Center{0, 0, 0, 0, 0});
    std::fill(counts.begin(), counts.end(), 0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int k = labels(x, y);
        const Lab& p = img(x, y);
        Center& s = sums[k];
        s.L += p.L;
        s.a += p.a;
        s.b += p.b;
        s.x += x;
        s.y += y;
        ++counts[k];
      }
    }
    for (std::size_t k = 0; k < centers.size(); ++k) {
      if (counts[k] == 0) continue;
      const double n = counts[k];
      centers[k] = {sums[k].L / n, sums[k].a / n, sums[k].b / n, sums[k].x / n, sums[k].y / n};
    }
  }

  return enforceConnectivity(labels);
}

LabelMap enforceConnectivity(const LabelMap& labels) {
  const int w = labels.width(), h = labels.height();
  const Components comps = connectedComponents(labels);
  const int nComp = static_cast<int>(comps.label.size());
  int maxLabel = 0;
  for (int l : comps.label) maxLabel = std::max(maxLabel, l);

  std::vector<int> mainComp(maxLabel + 1, -1);
  for (int c = 0; c < nComp; ++c) {
    int& m = mainComp[comps.label[c]];
    if (m < 0 || comps.size[c] > comps.size[m]) m = c;
  }

  std::vector<std::vector<int>> adjacent(nComp);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int a = comps.id[static_cast<std::size_t>(y) * w + x];
      if (x + 1 < w) {
        const int b = comps.id[static_cast<std::size_t>(y) * w + x + 1];
        if (a != b) {
          adjacent[a].push_back(b);
          adjacent[b].push_back(a);
        }
      }
      if (y + 1 < h) {
        const int b = comps.id[static_cast<std::size_t>(y + 1) * w + x];
        if (a != b) {
          adjacent[a].push_back(b);
          adjacent[b].push_back(a);
        }
      }
    }
  }
  for (auto& adj : adjacent) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  std::vector<int> finalLabel(nComp, -1);
  std::vector<long> labelSize(maxLabel + 1, 0);
  std::vector<int> orphans;
  for (int c = 0; c < nComp; ++c) {
    if (mainComp[comps.label[c]] == c) {
      finalLabel[c] = comps.label[c];
      labelSize[comps.label[c]] = comps.size[c];
    } else {
      orphans.push_back(c);
    }
  }

  // An orphan may only join a region already connected to its label's main
  // component, so unresolved orphans wait for a resolved neighbour.
  std::size_t remaining = orphans.size();
  while (remaining > 0) {
    std::size_t resolved = 0;
    for (int c : orphans) {
      if (finalLabel[c] >= 0) continue;
      int best = -1;
      for (int n : adjacent[c]) {
        const int l = finalLabel[n];
        if (l < 0) continue;
        if (best < 0 || labelSize[l] > labelSize[best] ||
            (labelSize[l] == labelSize[best] && l < best)) {
          best = l;
        }
      }
      if (best < 0) continue;
      finalLabel[c] = best;
      labelSize[best] += comps.size[c];
      ++resolved;
    }
    if (resolved == 0) throw std::logic_error("connectivity enforcement stalled");
    remaining -= resolved;
  }

  std::vector<int> compact(maxLabel + 1, -1);
  int next = 0;
  for (int l = 0; l <= maxLabel; ++l) {
    if (labelSize[l] > 0) compact[l] = next++;
  }
  LabelMap out(w, h);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = compact[finalLabel[comps.id[i]]];
  return out;
}

SuperpixelMap extractFeatures(LabelMap labels, const LabImage& img) {
  if (!labels.sameShape(img)) throw std::invalid_argument("label map and image differ in size");
  const int w = labels.width(), h = labels.height();
  int n = 0;
  for (int l : labels.values()) {
    if (l < 0) throw std::invalid_argument("negative superpixel label");
    n = std::max(n, l + 1);
  }

  struct Acc {
    double L = 0, a = 0, b = 0, x = 0, y = 0;
    long count = 0;
  };
  std::vector<Acc> acc(n);
  std::vector<std::vector<int>> neighbors(n);
  std::vector<std::uint8_t> sides(n, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int l = labels(x, y);
      const Lab& p = img(x, y);
      Acc& s = acc[l];
      s.L += p.L;
      s.a += p.a;
      s.b += p.b;
      s.x += x;
      s.y += y;
      ++s.count;
      if (y == 0) sides[l] |= kTop;
      if (y == h - 1) sides[l] |= kBottom;
      if (x == 0) sides[l] |= kLeft;
      if (x == w - 1) sides[l] |= kRight;
      if (x + 1 < w && labels(x + 1, y) != l) {
        neighbors[l].push_back(labels(x + 1, y));
        neighbors[labels(x + 1, y)].push_back(l);
      }
      if (y + 1 < h && labels(x, y + 1) != l) {
        neighbors[l].push_back(labels(x, y + 1));
        neighbors[labels(x, y + 1)].push_back(l);
      }
    }
  }

  SuperpixelMap map;
  map.features.resize(n);
  const double total = static_cast<double>(w) * h;
  for (int l = 0; l < n; ++l) {
    const Acc& s = acc[l];
    if (s.count == 0) throw std::invalid_argument("superpixel label " + std::to_string(l) + " is empty");
    SuperpixelFeature& f = map.features[l];
    const double c = static_cast<double>(s.count);
    f.meanColor = {s.L / c, s.a / c, s.b / c};
    f.px = s.x / c;
    f.py = s.y / c;
    f.cx = w > 1 ? f.px / (w - 1) : 0.5;
    f.cy = h > 1 ? f.py / (h - 1) : 0.5;
    f.areaFraction = c / total;
    f.borderSides = sides[l];
    auto& nb = neighbors[l];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    f.neighbors = std::move(nb);
  }
  map.labels = std::move(labels);
  return map;
}

SuperpixelMap slicSegment(const LabImage& img, const SlicParams& params) {
  return extractFeatures(slicLabels(img, params), img);
}

}  // namespace salgraph
