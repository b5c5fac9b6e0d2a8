#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maskpath/mask.hpp"

namespace maskpath {

/// 8-bit image buffer, row-major, `channels` interleaved samples per pixel.
struct ImageU8 {
    int height = 0;
    int width = 0;
    int channels = 1;
    std::vector<std::uint8_t> data;

    std::uint8_t at(int r, int c, int ch = 0) const {
        return data[(static_cast<std::size_t>(r) * width + c) * channels + ch];
    }
    std::uint8_t& at(int r, int c, int ch = 0) {
        return data[(static_cast<std::size_t>(r) * width + c) * channels + ch];
    }
};

/// Read any PNG as 8-bit grayscale (palette and color inputs are converted).
ImageU8 read_png_gray(const std::string& path);

/// Read any PNG as 8-bit RGB.
ImageU8 read_png_rgb(const std::string& path);

void write_png_gray(const std::string& path, const ImageU8& image);
void write_png_rgb(const std::string& path, const ImageU8& image);

/// Mask ingestion convention: foreground iff gray value >= 128.
BinaryMask mask_from_png(const std::string& path);

/// Foreground pixels are written as 255, background as 0.
void write_mask_png(const std::string& path, const BinaryMask& mask);

/// Soft masks round to the nearest of 256 gray levels.
void write_soft_png(const std::string& path, const SoftMask& mask);

} // namespace maskpath
