#include "maskpath/mask.hpp"

#include <algorithm>
#include <numeric>

namespace maskpath {

namespace {

void require_positive_dims(int h, int w) {
    if (h < 1 || w < 1) {
        throw Error(ErrorCode::ZeroDimension,
                    "mask dimensions must be positive, got " + std::to_string(h) + "x" + std::to_string(w));
    }
}

} // namespace

BinaryMask::BinaryMask(int h, int w, std::uint8_t fill) : height(h), width(w) {
    require_positive_dims(h, w);
    bits.assign(static_cast<std::size_t>(h) * w, fill);
}

std::int64_t BinaryMask::area() const {
    return std::accumulate(bits.begin(), bits.end(), std::int64_t{0});
}

SoftMask::SoftMask(int h, int w, double fill) : height(h), width(w) {
    require_positive_dims(h, w);
    values.assign(static_cast<std::size_t>(h) * w, fill);
}

SoftMask to_soft(const BinaryMask& mask) {
    SoftMask out(mask.height, mask.width);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        out.values[i] = mask.bits[i] ? 1.0 : 0.0;
    }
    return out;
}

BinaryMask threshold(const SoftMask& mask, double t) {
    BinaryMask out(mask.height, mask.width);
    for (std::size_t i = 0; i < mask.values.size(); ++i) {
        out.bits[i] = mask.values[i] >= t ? 1 : 0;
    }
    return out;
}

namespace {

// One axis of the separable resample. Area average when shrinking,
// bilinear when growing, plain copy when the length is unchanged.
void resize_axis(const double* in, std::size_t in_stride, int in_len,
                 double* out, std::size_t out_stride, int out_len) {
    if (out_len == in_len) {
        for (int o = 0; o < out_len; ++o) {
            out[o * out_stride] = in[o * in_stride];
        }
        return;
    }
    if (out_len < in_len) {
        const double scale = static_cast<double>(in_len) / out_len;
        for (int o = 0; o < out_len; ++o) {
            const double x0 = o * scale;
            const double x1 = (o + 1) * scale;
            int i0 = static_cast<int>(std::floor(x0));
            int i1 = std::min(static_cast<int>(std::ceil(x1)), in_len);
            double num = 0.0;
            double den = 0.0;
            for (int i = i0; i < i1; ++i) {
                const double w = std::min(x1, static_cast<double>(i + 1)) - std::max(x0, static_cast<double>(i));
                num += w * in[i * in_stride];
                den += w;
            }
            out[o * out_stride] = den > 0.0 ? num / den : 0.0;
        }
        return;
    }
    const double scale = static_cast<double>(in_len) / out_len;
    for (int o = 0; o < out_len; ++o) {
        const double pos = (o + 0.5) * scale - 0.5;
        int i0 = static_cast<int>(std::floor(pos));
        double f = pos - i0;
        int ia = std::clamp(i0, 0, in_len - 1);
        int ib = std::clamp(i0 + 1, 0, in_len - 1);
        out[o * out_stride] = in[ia * in_stride] * (1.0 - f) + in[ib * in_stride] * f;
    }
}

} // namespace

SoftMask resize_mask(const SoftMask& mask, int out_h, int out_w) {
    require_positive_dims(out_h, out_w);
    if (out_h == mask.height && out_w == mask.width) {
        return mask;
    }
    // rows first, then columns
    SoftMask tmp(out_h, mask.width);
    for (int c = 0; c < mask.width; ++c) {
        resize_axis(mask.values.data() + c, mask.width, mask.height,
                    tmp.values.data() + c, mask.width, out_h);
    }
    SoftMask out(out_h, out_w);
    for (int r = 0; r < out_h; ++r) {
        resize_axis(tmp.values.data() + static_cast<std::size_t>(r) * mask.width, 1, mask.width,
                    out.values.data() + static_cast<std::size_t>(r) * out_w, 1, out_w);
    }
    for (double& v : out.values) {
        v = std::clamp(v, 0.0, 1.0);
    }
    return out;
}

namespace {

// Exact squared Euclidean distance transform (two-pass lower-envelope
// scan), all in integer arithmetic. `is_set` marks the pixels measured
// to; `g_inf` caps the column pass so squares stay in range.
std::vector<std::int64_t> squared_edt(int h, int w, const std::vector<std::uint8_t>& is_set) {
    const std::int64_t g_inf = static_cast<std::int64_t>(h) + w + 1;
    std::vector<std::int64_t> g(static_cast<std::size_t>(h) * w, g_inf);

    for (int c = 0; c < w; ++c) {
        if (is_set[c] != 0) g[c] = 0;
        for (int r = 1; r < h; ++r) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            g[i] = is_set[i] ? 0 : std::min(g_inf, g[i - w] + 1);
        }
        for (int r = h - 2; r >= 0; --r) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            g[i] = std::min(g[i], g[i + w] + 1);
        }
    }

    std::vector<std::int64_t> dt(static_cast<std::size_t>(h) * w, 0);
    std::vector<int> s(w), t(w);
    for (int r = 0; r < h; ++r) {
        const std::int64_t* gr = g.data() + static_cast<std::size_t>(r) * w;
        auto f = [&](std::int64_t x, std::int64_t i) {
            return (x - i) * (x - i) + gr[i] * gr[i];
        };
        auto sep = [&](std::int64_t i, std::int64_t u) {
            return (u * u - i * i + gr[u] * gr[u] - gr[i] * gr[i]) / (2 * (u - i));
        };
        int q = 0;
        s[0] = 0;
        t[0] = 0;
        for (int u = 1; u < w; ++u) {
            while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
            if (q < 0) {
                q = 0;
                s[0] = u;
            } else {
                const std::int64_t pos = 1 + sep(s[q], u);
                if (pos < w) {
                    ++q;
                    s[q] = u;
                    t[q] = static_cast<int>(pos);
                }
            }
        }
        std::int64_t* dr = dt.data() + static_cast<std::size_t>(r) * w;
        for (int u = w - 1; u >= 0; --u) {
            dr[u] = f(u, s[q]);
            if (u == t[q]) --q;
        }
    }
    return dt;
}

} // namespace

DistanceMap distance_from_outside(const BinaryMask& mask) {
    // Pad by a one-pixel background ring so the border acts as outside.
    const int h = mask.height + 2;
    const int w = mask.width + 2;
    std::vector<std::uint8_t> is_set(static_cast<std::size_t>(h) * w, 1);
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            is_set[static_cast<std::size_t>(r + 1) * w + (c + 1)] = mask.at(r, c) ? 0 : 1;
        }
    }
    std::vector<std::int64_t> dt = squared_edt(h, w, is_set);
    DistanceMap out;
    out.height = mask.height;
    out.width = mask.width;
    out.sq.resize(mask.bits.size());
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            out.sq[static_cast<std::size_t>(r) * mask.width + c] = dt[static_cast<std::size_t>(r + 1) * w + (c + 1)];
        }
    }
    return out;
}

DistanceMap distance_to_foreground(const BinaryMask& mask) {
    DistanceMap out;
    out.height = mask.height;
    out.width = mask.width;
    if (mask.empty()) {
        out.sq.assign(mask.bits.size(), DistanceMap::kUnreachable);
        return out;
    }
    out.sq = squared_edt(mask.height, mask.width, mask.bits);
    return out;
}

BinaryMask boundary_band(const BinaryMask& mask, double eps) {
    if (eps < 0.0) {
        throw Error(ErrorCode::ValueOutOfRange, "band width must be non-negative");
    }
    const DistanceMap dist = distance_from_outside(mask);
    const double eps_sq = eps * eps;
    BinaryMask out(mask.height, mask.width);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        out.bits[i] = (mask.bits[i] != 0 && static_cast<double>(dist.sq[i]) <= eps_sq) ? 1 : 0;
    }
    return out;
}

SignedDistanceMap signed_distance_normalized(const BinaryMask& mask) {
    const DistanceMap inside = distance_from_outside(mask);
    const DistanceMap outside = distance_to_foreground(mask);
    const double diag = std::sqrt(static_cast<double>(mask.height) * mask.height +
                                  static_cast<double>(mask.width) * mask.width);
    SignedDistanceMap out;
    out.height = mask.height;
    out.width = mask.width;
    out.values.resize(mask.bits.size());
    for (std::size_t i = 0; i < mask.bits.size(); ++i) {
        double v;
        if (mask.bits[i]) {
            v = -std::sqrt(static_cast<double>(inside.sq[i])) / diag;
        } else if (outside.sq[i] == DistanceMap::kUnreachable) {
            v = 1.0;
        } else {
            v = std::sqrt(static_cast<double>(outside.sq[i])) / diag;
        }
        out.values[i] = std::clamp(v, -1.0, 1.0);
    }
    return out;
}

} // namespace maskpath
