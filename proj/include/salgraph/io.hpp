#pragma once

#include <filesystem>

#include "salgraph/image.hpp"

namespace salgraph::io {

/// Reads PNG/JPEG as 8-bit RGB; grayscale files are promoted. Throws on failure.
RgbImage readRgb(const std::filesystem::path& path);
GrayImage readGray(const std::filesystem::path& path);

void writeGray(const std::filesystem::path& path, const GrayImage& img);
void writeRgb(const std::filesystem::path& path, const RgbImage& img);
/// 16-bit PNG of superpixel labels.
void writeLabels(const std::filesystem::path& path, const LabelMap& labels);
LabelMap readLabels(const std::filesystem::path& path);

bool isImageFile(const std::filesystem::path& path);

}  // namespace salgraph::io
