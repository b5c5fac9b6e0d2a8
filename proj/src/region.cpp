#include "maskpath/region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace maskpath {

namespace {

void check_bin(int v, const BinConfig& cfg) {
    cfg.validate();
    if (v < 0 || v >= cfg.bins) {
        throw Error(ErrorCode::BinOutOfRange,
                    "bin " + std::to_string(v) + " outside [0, " + std::to_string(cfg.bins) + ")");
    }
}

} // namespace

double dequantize_coord(int v, const BinConfig& cfg) {
    check_bin(v, cfg);
    return static_cast<double>(v) / cfg.bins;
}

int quantize_coord(double c, const BinConfig& cfg) {
    cfg.validate();
    if (!(c >= 0.0 && c <= 1.0)) {
        throw Error(ErrorCode::ValueOutOfRange, "coordinate must lie in [0,1]");
    }
    const int v = static_cast<int>(std::floor(c * cfg.bins));
    return std::min(v, cfg.bins - 1);
}

double dequantize_size(int v, const BinConfig& cfg) {
    check_bin(v, cfg);
    return std::exp2((static_cast<double>(v) / (cfg.bins - 1)) * 10.0 - 10.0);
}

int quantize_size(double s, const BinConfig& cfg) {
    cfg.validate();
    if (!(s > 0.0)) {
        throw Error(ErrorCode::NonPositiveSize, "size must be positive");
    }
    const double lo = std::exp2(-10.0);
    s = std::clamp(s, lo, 1.0);
    const double v = std::round((std::log2(s) + 10.0) / 10.0 * (cfg.bins - 1));
    return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(cfg.bins - 1)));
}

FourierBasis FourierBasis::create(int d_in, int d_phi, std::uint64_t seed) {
    if (d_in < 1 || d_phi < 2 || d_phi % 2 != 0) {
        throw Error(ErrorCode::ConfigInvalid, "need d_in >= 1 and even d_phi >= 2");
    }
    FourierBasis basis;
    basis.d_in = d_in;
    basis.d_phi = d_phi;
    basis.seed = seed;
    basis.matrix.resize(static_cast<std::size_t>(d_phi / 2) * d_in);

    // Box-Muller over mt19937_64 uniforms; std::normal_distribution is
    // implementation-defined and would not reproduce across toolchains.
    std::mt19937_64 rng(seed);
    const auto uniform = [&rng] {
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53; // (0, 1]
    };
    double spare = 0.0;
    bool have_spare = false;
    for (double& entry : basis.matrix) {
        if (have_spare) {
            entry = spare;
            have_spare = false;
            continue;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        entry = radius * std::cos(angle);
        spare = radius * std::sin(angle);
        have_spare = true;
    }
    return basis;
}

std::vector<double> fourier_features(const std::vector<double>& u, const FourierBasis& basis) {
    if (static_cast<int>(u.size()) != basis.d_in) {
        throw Error(ErrorCode::DimensionMismatch,
                    "input has dim " + std::to_string(u.size()) + ", basis expects " + std::to_string(basis.d_in));
    }
    const int half = basis.d_phi / 2;
    std::vector<double> out(basis.d_phi);
    for (int r = 0; r < half; ++r) {
        double dot = 0.0;
        for (int c = 0; c < basis.d_in; ++c) {
            dot += u[c] * basis.matrix[static_cast<std::size_t>(r) * basis.d_in + c];
        }
        const double phase = 2.0 * std::numbers::pi * dot;
        out[r] = std::cos(phase);
        out[half + r] = std::sin(phase);
    }
    return out;
}

namespace {

void check_logits(const std::vector<double>& logits, const BinConfig& cfg) {
    cfg.validate();
    if (static_cast<int>(logits.size()) != cfg.bins) {
        throw Error(ErrorCode::LengthMismatch,
                    "expected " + std::to_string(cfg.bins) + " logits, got " + std::to_string(logits.size()));
    }
}

} // namespace

int select_bin_argmax(const std::vector<double>& logits, const BinConfig& cfg) {
    check_logits(logits, cfg);
    int best = 0;
    for (int i = 1; i < static_cast<int>(logits.size()); ++i) {
        if (logits[i] > logits[best]) best = i;
    }
    return best;
}

int select_bin_sample(const std::vector<double>& logits, double temperature, std::uint64_t seed,
                      const BinConfig& cfg) {
    check_logits(logits, cfg);
    if (temperature < 0.0) {
        throw Error(ErrorCode::ValueOutOfRange, "temperature must be non-negative");
    }
    if (temperature == 0.0) {
        return select_bin_argmax(logits, cfg);
    }
    const double top = *std::max_element(logits.begin(), logits.end());
    std::vector<double> weights(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        weights[i] = std::exp((logits[i] - top) / temperature);
        total += weights[i];
    }
    std::mt19937_64 rng(seed);
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53 * total;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i];
        if (u < cumulative) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

NormalizedBox decode_box(int v_cx, int v_cy, int v_w, int v_h, const BinConfig& cfg) {
    NormalizedBox box;
    box.cx = dequantize_coord(v_cx, cfg);
    box.cy = dequantize_coord(v_cy, cfg);
    box.w = dequantize_size(v_w, cfg);
    box.h = dequantize_size(v_h, cfg);
    return box;
}

QuantizedBox quantize_box(const NormalizedBox& box, const BinConfig& cfg) {
    QuantizedBox bins;
    bins.v_cx = quantize_coord(box.cx, cfg);
    bins.v_cy = quantize_coord(box.cy, cfg);
    bins.v_w = quantize_size(box.w, cfg);
    bins.v_h = quantize_size(box.h, cfg);
    return bins;
}

} // namespace maskpath
