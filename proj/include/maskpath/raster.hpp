#pragma once

#include <vector>

#include "maskpath/mask.hpp"
#include "maskpath/path.hpp"

namespace maskpath {

/// Axis-aligned box in normalized image coordinates: center plus extents.
struct NormalizedBox {
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;

    bool valid() const {
        return cx >= 0.0 && cx <= 1.0 && cy >= 0.0 && cy <= 1.0 && w > 0.0 && w <= 1.0 && h > 0.0 && h <= 1.0;
    }
};

/// Half-open pixel rectangle clipped to image bounds.
struct PixelBox {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2&) const = default;
};

/// Real-coordinate mirror of VectorPath, produced by map_path.
struct RealSegment {
    Segment::Kind kind = Segment::Kind::LineTo;
    Vec2 c1;
    Vec2 c2;
    Vec2 end;
};

struct RealSubpath {
    Vec2 start;
    std::vector<RealSegment> segments;
    bool closed = false;
};

struct RealPath {
    std::vector<RealSubpath> subpaths;
};

enum class FillRule {
    NonZero,
    EvenOdd,
};

struct RasterOptions {
    FillRule fill_rule = FillRule::NonZero;
    double tolerance = 0.25; // bezier flatness, in mapped pixel units
};

inline constexpr double kViewBox = 960.0;
inline constexpr int kWorkingResolution = 378;

/// Adaptive subdivision of one cubic into a polyline whose deviation from
/// the true curve is at most `tol`. Endpoints are exact; consecutive
/// duplicate points are dropped.
std::vector<Vec2> flatten_cubic(Vec2 c0, Vec2 c1, Vec2 c2, Vec2 c3, double tol);

/// Affine map from path space into pixels: path point (u,v) lands at
/// ((cx - w/2) + (u/viewbox)*w, (cy - h/2) + (v/viewbox)*h) in normalized
/// image space, scaled by (width, height).
RealPath map_path(const NormalizedBox& box, const VectorPath& path, int height, int width,
                  double viewbox = kViewBox);

/// Closed polygons ready for scanline fill. Unclosed subpaths are closed
/// here; `auto_closed` reports whether that happened.
struct FlattenedPath {
    std::vector<std::vector<Vec2>> polygons;
    bool auto_closed = false;
};

FlattenedPath flatten_path(const RealPath& path, double tol);

/// Scanline fill of the flattened polygons at pixel centers (j+0.5, i+0.5).
BinaryMask fill_polygons(const std::vector<std::vector<Vec2>>& polygons, int height, int width,
                         FillRule rule = FillRule::NonZero);

/// Deterministic box-anchored rasterization at native resolution.
BinaryMask rasterize(const NormalizedBox& box, const VectorPath& path, int height, int width,
                     const RasterOptions& options = {});

/// Rasterize at native resolution, then resample to the working resolution.
SoftMask coarse_mask(const NormalizedBox& box, const VectorPath& path, int height, int width,
                     int out_h = kWorkingResolution, int out_w = kWorkingResolution,
                     const RasterOptions& options = {});

/// Tight bounding box of the foreground, as a normalized center/size box
/// over whole pixel cells.
NormalizedBox mask_to_box(const BinaryMask& mask);

PixelBox box_to_pixels(const NormalizedBox& box, int height, int width);

} // namespace maskpath
