#include "salgraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <stdexcept>
#include <string>

namespace salgraph::io {
namespace {

cv::Mat load(const std::filesystem::path& path, int flags) {
  cv::Mat m;
  try {
    m = cv::imread(path.string(), flags);
  } catch (const cv::Exception& e) {
    throw std::runtime_error("cannot decode image " + path.string() + ": " + e.what());
  }
  if (m.empty()) throw std::runtime_error("cannot read image " + path.string());
  return m;
}

void store(const std::filesystem::path& path, const cv::Mat& m) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), m);
  } catch (const cv::Exception& e) {
    throw std::runtime_error("cannot write image " + path.string() + ": " + e.what());
  }
  if (!ok) throw std::runtime_error("cannot write image " + path.string());
}

}  // namespace

RgbImage readRgb(const std::filesystem::path& path) {
  const cv::Mat bgr = load(path, cv::IMREAD_COLOR);
  RgbImage img(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) img(x, y) = {row[x][2], row[x][1], row[x][0]};
  }
  return img;
}

GrayImage readGray(const std::filesystem::path& path) {
  const cv::Mat g = load(path, cv::IMREAD_GRAYSCALE);
  GrayImage img(g.cols, g.rows);
  for (int y = 0; y < g.rows; ++y) {
    const auto* row = g.ptr<std::uint8_t>(y);
    std::copy(row, row + g.cols, &img(0, y));
  }
  return img;
}

void writeGray(const std::filesystem::path& path, const GrayImage& img) {
  cv::Mat m(img.height(), img.width(), CV_8UC1);
  for (int y = 0; y < img.height(); ++y) std::copy_n(&img(0, y), img.width(), m.ptr<std::uint8_t>(y));
  store(path, m);
}

void writeRgb(const std::filesystem::path& path, const RgbImage& img) {
  cv::Mat m(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    auto* row = m.ptr<cv::Vec3b>(y);
    for (int x = 0; x < img.width(); ++x) {
      const Rgb p = img(x, y);
      row[x] = cv::Vec3b(p.b, p.g, p.r);
    }
  }
  store(path, m);
}

void writeLabels(const std::filesystem::path& path, const LabelMap& labels) {
  cv::Mat m(labels.height(), labels.width(), CV_16UC1);
  for (int y = 0; y < labels.height(); ++y) {
    auto* row = m.ptr<std::uint16_t>(y);
    for (int x = 0; x < labels.width(); ++x) {
      const int v = labels(x, y);
      if (v < 0 || v > 65535) throw std::out_of_range("label does not fit 16 bits");
      row[x] = static_cast<std::uint16_t>(v);
    }
  }
  store(path, m);
}

LabelMap readLabels(const std::filesystem::path& path) {
  const cv::Mat m = load(path, cv::IMREAD_ANYDEPTH | cv::IMREAD_GRAYSCALE);
  if (m.type() != CV_16UC1) throw std::runtime_error("label image is not 16-bit: " + path.string());
  LabelMap labels(m.cols, m.rows);
  for (int y = 0; y < m.rows; ++y) {
    const auto* row = m.ptr<std::uint16_t>(y);
    for (int x = 0; x < m.cols; ++x) labels(x, y) = row[x];
  }
  return labels;
}

bool isImageFile(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

}  // namespace salgraph::io
