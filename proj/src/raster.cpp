#include "maskpath/raster.hpp"

#include <algorithm>
#include <cmath>

namespace maskpath {

namespace {

double dist_point_to_segment(Vec2 p, Vec2 a, Vec2 b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len_sq = dx * dx + dy * dy;
    double t = 0.0;
    if (len_sq > 0.0) {
        t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len_sq, 0.0, 1.0);
    }
    const double ex = p.x - (a.x + t * dx);
    const double ey = p.y - (a.y + t * dy);
    return std::sqrt(ex * ex + ey * ey);
}

void flatten_rec(Vec2 c0, Vec2 c1, Vec2 c2, Vec2 c3, double tol, int depth, std::vector<Vec2>& out) {
    const double flatness = std::max(dist_point_to_segment(c1, c0, c3), dist_point_to_segment(c2, c0, c3));
    if (flatness <= tol || depth >= 24) {
        if (out.empty() || !(out.back() == c3)) out.push_back(c3);
        return;
    }
    const Vec2 m01{(c0.x + c1.x) / 2, (c0.y + c1.y) / 2};
    const Vec2 m12{(c1.x + c2.x) / 2, (c1.y + c2.y) / 2};
    const Vec2 m23{(c2.x + c3.x) / 2, (c2.y + c3.y) / 2};
    const Vec2 m012{(m01.x + m12.x) / 2, (m01.y + m12.y) / 2};
    const Vec2 m123{(m12.x + m23.x) / 2, (m12.y + m23.y) / 2};
    const Vec2 mid{(m012.x + m123.x) / 2, (m012.y + m123.y) / 2};
    flatten_rec(c0, m01, m012, mid, tol, depth + 1, out);
    flatten_rec(mid, m123, m23, c3, tol, depth + 1, out);
}

} // namespace

std::vector<Vec2> flatten_cubic(Vec2 c0, Vec2 c1, Vec2 c2, Vec2 c3, double tol) {
    if (tol <= 0.0) {
        throw Error(ErrorCode::ValueOutOfRange, "flatness tolerance must be positive");
    }
    std::vector<Vec2> out{c0};
    flatten_rec(c0, c1, c2, c3, tol, 0, out);
    return out;
}

RealPath map_path(const NormalizedBox& box, const VectorPath& path, int height, int width, double viewbox) {
    if (!box.valid()) {
        throw Error(ErrorCode::ValueOutOfRange, "box violates 0<=cx,cy<=1, 0<w,h<=1");
    }
    if (height < 1 || width < 1) {
        throw Error(ErrorCode::ZeroDimension, "raster dimensions must be positive");
    }
    const auto map = [&](PathPoint p) {
        const double nx = (box.cx - box.w / 2.0) + (p.x / viewbox) * box.w;
        const double ny = (box.cy - box.h / 2.0) + (p.y / viewbox) * box.h;
        return Vec2{nx * width, ny * height};
    };
    RealPath out;
    out.subpaths.reserve(path.subpaths.size());
    for (const Subpath& sp : path.subpaths) {
        RealSubpath rsp;
        rsp.start = map(sp.start);
        rsp.closed = sp.closed;
        for (const Segment& seg : sp.segments) {
            RealSegment rseg;
            rseg.kind = seg.kind;
            rseg.c1 = map(seg.c1);
            rseg.c2 = map(seg.c2);
            rseg.end = map(seg.end);
            rsp.segments.push_back(rseg);
        }
        out.subpaths.push_back(std::move(rsp));
    }
    return out;
}

FlattenedPath flatten_path(const RealPath& path, double tol) {
    FlattenedPath out;
    for (const RealSubpath& sp : path.subpaths) {
        std::vector<Vec2> poly{sp.start};
        for (const RealSegment& seg : sp.segments) {
            if (seg.kind == Segment::Kind::LineTo) {
                if (!(poly.back() == seg.end)) poly.push_back(seg.end);
            } else {
                flatten_rec(poly.back(), seg.c1, seg.c2, seg.end, tol, 0, poly);
            }
        }
        if (!sp.closed) out.auto_closed = true;
        // the fill treats the vertex list as cyclic, so closing is implicit
        if (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
        out.polygons.push_back(std::move(poly));
    }
    return out;
}

namespace {

// Crossing of edge (a -> b) with the scanline through cy affects every
// pixel whose center lies at or right of the crossing. The first such
// column is estimated in floating point and then corrected with the
// exact orientation predicate, so coverage matches a pointwise winding
// test at every pixel center.
struct Crossing {
    int first_col;
    int dir;
};

inline bool center_at_or_right(double cx, double cy, Vec2 a, Vec2 b) {
    // cx >= crossing x  <=>  E / (b.y - a.y) <= 0,
    // E = (b.x - a.x)(cy - a.y) - (cx - a.x)(b.y - a.y)
    const double e = (b.x - a.x) * (cy - a.y) - (cx - a.x) * (b.y - a.y);
    return b.y > a.y ? e <= 0.0 : e >= 0.0;
}

} // namespace

BinaryMask fill_polygons(const std::vector<std::vector<Vec2>>& polygons, int height, int width, FillRule rule) {
    std::size_t vertex_count = 0;
    for (const auto& poly : polygons) vertex_count += poly.size();
    if (vertex_count == 0) {
        throw Error(ErrorCode::DegenerateGeometry, "no vertices to fill");
    }

    struct Edge {
        Vec2 a, b;
        double ymin, ymax;
        int dir;
    };
    std::vector<Edge> edges;
    for (const auto& poly : polygons) {
        const std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = poly[i];
            const Vec2 b = poly[(i + 1) % n];
            if (a.y == b.y) continue; // horizontal edges never cross a scanline
            edges.push_back({a, b, std::min(a.y, b.y), std::max(a.y, b.y), a.y < b.y ? 1 : -1});
        }
    }

    BinaryMask mask(height, width);
    std::vector<int> delta(static_cast<std::size_t>(width) + 1, 0);
    for (int row = 0; row < height; ++row) {
        const double cy = row + 0.5;
        std::fill(delta.begin(), delta.end(), 0);
        bool any = false;
        for (const Edge& e : edges) {
            if (!(e.ymin <= cy && cy < e.ymax)) continue;
            const double x_est = e.a.x + (cy - e.a.y) * (e.b.x - e.a.x) / (e.b.y - e.a.y);
            int j = static_cast<int>(std::ceil(x_est - 0.5));
            j = std::clamp(j, 0, width);
            while (j > 0 && center_at_or_right(j - 1 + 0.5, cy, e.a, e.b)) --j;
            while (j < width && !center_at_or_right(j + 0.5, cy, e.a, e.b)) ++j;
            if (j >= width) continue;
            delta[j] += e.dir;
            any = true;
        }
        if (!any) continue;
        int winding = 0;
        std::uint8_t* out_row = mask.bits.data() + static_cast<std::size_t>(row) * width;
        for (int j = 0; j < width; ++j) {
            winding += delta[j];
            out_row[j] = (rule == FillRule::NonZero ? winding != 0 : (winding & 1) != 0) ? 1 : 0;
        }
    }
    return mask;
}

BinaryMask rasterize(const NormalizedBox& box, const VectorPath& path, int height, int width,
                     const RasterOptions& options) {
    const RealPath mapped = map_path(box, path, height, width);
    const FlattenedPath flat = flatten_path(mapped, options.tolerance);
    return fill_polygons(flat.polygons, height, width, options.fill_rule);
}

SoftMask coarse_mask(const NormalizedBox& box, const VectorPath& path, int height, int width, int out_h,
                     int out_w, const RasterOptions& options) {
    return resize_mask(to_soft(rasterize(box, path, height, width, options)), out_h, out_w);
}

NormalizedBox mask_to_box(const BinaryMask& mask) {
    int rmin = mask.height, rmax = -1, cmin = mask.width, cmax = -1;
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            if (!mask.at(r, c)) continue;
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, c);
        }
    }
    if (rmax < 0) {
        throw Error(ErrorCode::EmptyMask, "cannot box an empty mask");
    }
    // pixel (r,c) occupies the cell [c,c+1) x [r,r+1)
    const double x0 = cmin, x1 = cmax + 1.0;
    const double y0 = rmin, y1 = rmax + 1.0;
    NormalizedBox box;
    box.cx = (x0 + x1) / 2.0 / mask.width;
    box.cy = (y0 + y1) / 2.0 / mask.height;
    box.w = (x1 - x0) / mask.width;
    box.h = (y1 - y0) / mask.height;
    return box;
}

PixelBox box_to_pixels(const NormalizedBox& box, int height, int width) {
    PixelBox out;
    out.x0 = std::clamp(static_cast<int>(std::floor((box.cx - box.w / 2.0) * width)), 0, width);
    out.x1 = std::clamp(static_cast<int>(std::ceil((box.cx + box.w / 2.0) * width)), 0, width);
    out.y0 = std::clamp(static_cast<int>(std::floor((box.cy - box.h / 2.0) * height)), 0, height);
    out.y1 = std::clamp(static_cast<int>(std::ceil((box.cy + box.h / 2.0) * height)), 0, height);
    return out;
}

} // namespace maskpath
