#pragma once

#include <cstdint>
#include <vector>

#include "maskpath/errors.hpp"
#include "maskpath/raster.hpp"

namespace maskpath {

/// Bin count for the spatial value codecs.
struct BinConfig {
    int bins = 1024;

    void validate() const {
        if (bins < 2) throw Error(ErrorCode::ConfigInvalid, "bin count must be >= 2");
    }
};

/// Coordinate bins are linear: bin v decodes to v/V in [0,1).
double dequantize_coord(int v, const BinConfig& cfg = {});

/// floor(c*V), clamped to the last bin; exact inverse of dequantize_coord
/// on bin indices.
int quantize_coord(double c, const BinConfig& cfg = {});

/// Size bins are log-spaced over [2^-10, 1]: bin v decodes to
/// 2^((v/(V-1))*10 - 10).
double dequantize_size(int v, const BinConfig& cfg = {});

/// Nearest bin in log space; inputs clamp to the representable range.
int quantize_size(double s, const BinConfig& cfg = {});

/// Fixed random projection for Fourier features. Entries are standard
/// normal, generated reproducibly from the seed: mt19937_64 uniforms
/// mapped through a Box-Muller transform (pairs, cosine branch first).
struct FourierBasis {
    int d_in = 0;
    int d_phi = 0;              // output dimension, even
    std::uint64_t seed = 0;
    std::vector<double> matrix; // (d_phi/2) x d_in, row-major

    static FourierBasis create(int d_in, int d_phi, std::uint64_t seed);
};

/// phi(u) = [cos(2*pi*u*W^T), sin(2*pi*u*W^T)], cos half first.
std::vector<double> fourier_features(const std::vector<double>& u, const FourierBasis& basis);

struct SelectArgmax {};
struct SelectSample {
    double temperature = 1.0;
    std::uint64_t seed = 0;
};

/// Deterministic argmax with lowest-index tie-break.
int select_bin_argmax(const std::vector<double>& logits, const BinConfig& cfg = {});

/// Softmax sampling at the given temperature; reproducible from the seed.
/// temperature == 0 degenerates to argmax.
int select_bin_sample(const std::vector<double>& logits, double temperature, std::uint64_t seed,
                      const BinConfig& cfg = {});

/// Assemble a box from (cx, cy) coordinate bins and (w, h) size bins.
NormalizedBox decode_box(int v_cx, int v_cy, int v_w, int v_h, const BinConfig& cfg = {});

struct QuantizedBox {
    int v_cx = 0;
    int v_cy = 0;
    int v_w = 0;
    int v_h = 0;
};

QuantizedBox quantize_box(const NormalizedBox& box, const BinConfig& cfg = {});

} // namespace maskpath
