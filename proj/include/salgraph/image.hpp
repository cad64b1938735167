#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace salgraph {

/// Dense row-major 2-D field. Used for images, edge maps and label maps.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width < 0 || height < 0) throw std::invalid_argument("negative grid size");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  template <typename U>
  bool sameShape(const Grid<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

struct Lab {
  double L = 0.0, a = 0.0, b = 0.0;
  bool operator==(const Lab&) const = default;
};

using RgbImage = Grid<Rgb>;
using LabImage = Grid<Lab>;
using GrayImage = Grid<std::uint8_t>;
/// Per-pixel edge probability in [0,1].
using EdgeMap = Grid<double>;
using LabelMap = Grid<int>;

inline constexpr int kMinImageSide = 16;

/// Throws std::invalid_argument unless the image is at least 16x16.
void requireValidInput(const RgbImage& img);

/// sRGB (D65) to CIELAB, per pixel.
Lab rgbToLab(Rgb px);
LabImage rgbToLab(const RgbImage& img);

/// 3x3 Sobel gradient magnitude on L, min-max normalized. Constant images give zeros.
EdgeMap computeEdgeMap(const LabImage& img);

/// Converts an 8-bit edge-probability image (value/255) after checking its shape.
EdgeMap edgeMapFromGray(const GrayImage& gray, int expectedWidth, int expectedHeight);

}  // namespace salgraph
