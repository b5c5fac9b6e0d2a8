#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "maskpath/errors.hpp"

namespace maskpath {

/// Binary foreground mask, row-major, one byte per pixel (0 or 1).
struct BinaryMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int h, int w, std::uint8_t fill = 0);

    std::uint8_t at(int r, int c) const { return bits[static_cast<std::size_t>(r) * width + c]; }
    std::uint8_t& at(int r, int c) { return bits[static_cast<std::size_t>(r) * width + c]; }

    std::int64_t area() const;
    bool empty() const { return area() == 0; }

    bool operator==(const BinaryMask&) const = default;
};

/// Real-valued mask with entries in [0,1], row-major.
struct SoftMask {
    int height = 0;
    int width = 0;
    std::vector<double> values;

    SoftMask() = default;
    SoftMask(int h, int w, double fill = 0.0);

    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * width + c]; }
    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * width + c]; }

    bool operator==(const SoftMask&) const = default;
};

/// Exact Euclidean distance map. Stores squared distances in integer pixel
/// units; the root is taken at read time so set-membership comparisons
/// (dist <= eps) can run in the exact squared domain.
struct DistanceMap {
    int height = 0;
    int width = 0;
    std::vector<std::int64_t> sq;

    static constexpr std::int64_t kUnreachable = INT64_MAX;

    double at(int r, int c) const {
        std::int64_t v = sq[static_cast<std::size_t>(r) * width + c];
        return v == kUnreachable ? INFINITY : std::sqrt(static_cast<double>(v));
    }
};

/// Normalized signed distance map: negative inside the mask, positive
/// outside, scaled by the image diagonal and clipped to [-1,1].
struct SignedDistanceMap {
    int height = 0;
    int width = 0;
    std::vector<double> values;

    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * width + c]; }
};

SoftMask to_soft(const BinaryMask& mask);

/// Binarize: foreground iff value >= t.
BinaryMask threshold(const SoftMask& mask, double t);

/// Resample to (out_h, out_w). Downscaling uses an area average (box
/// filter), upscaling bilinear interpolation; a same-size resize copies
/// bit-exactly. Output values stay in [0,1].
SoftMask resize_mask(const SoftMask& mask, int out_h, int out_w);

/// For each foreground pixel, the exact Euclidean distance to the nearest
/// background pixel; the image border counts as adjacent background.
/// Background pixels carry 0.
DistanceMap distance_from_outside(const BinaryMask& mask);

/// For each pixel, the exact Euclidean distance to the nearest foreground
/// pixel (0 on foreground). Unreachable (empty mask) pixels carry
/// DistanceMap::kUnreachable.
DistanceMap distance_to_foreground(const BinaryMask& mask);

/// Inner boundary band: pixels inside the mask whose distance to the
/// outside is at most eps pixels. Comparison runs on squared distances.
BinaryMask boundary_band(const BinaryMask& mask, double eps);

/// Signed distance: -distance_from_outside inside, +distance_to_foreground
/// outside, divided by sqrt(H^2+W^2) and clipped to [-1,1].
SignedDistanceMap signed_distance_normalized(const BinaryMask& mask);

} // namespace maskpath
