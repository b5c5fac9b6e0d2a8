#pragma once

#include <cstdint>
#include <vector>

#include "maskpath/mask.hpp"
#include "maskpath/raster.hpp"

namespace maskpath {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
};

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt);

/// |a ∩ b| / |a ∪ b|. Both empty compares equal masks: 1. Exactly one
/// empty: 0.
double iou(const BinaryMask& a, const BinaryMask& b);

/// Continuous-area box IoU.
double box_iou(const NormalizedBox& a, const NormalizedBox& b);

/// Pooled IoU: intersections and unions are summed over samples before
/// the ratio is taken. Merging accumulators is associative and
/// commutative.
struct CIoUAccumulator {
    std::int64_t intersection_sum = 0;
    std::int64_t union_sum = 0;
    std::int64_t samples = 0;

    void update(const BinaryMask& pred, const BinaryMask& gt);
    void merge(const CIoUAccumulator& other);
    double final() const; // EmptyAccumulator when the pooled union is zero
};

/// Tversky index TP / (TP + alpha*FP + beta*FN). alpha=beta=1 is IoU,
/// alpha=beta=0.5 is Dice. All-zero counts return 1.
double tversky(const BinaryMask& pred, const BinaryMask& gt, double alpha, double beta);

/// IoU of the inner boundary bands of width eps_frac * image diagonal.
double boundary_iou(const BinaryMask& pred, const BinaryMask& gt, double eps_frac);

/// Soft IoU: sum(P*M) / (sum(P) + sum(M) - sum(P*M)); 1 when both sides
/// are identically zero.
double soft_iou(const SoftMask& pred, const BinaryMask& gt);

inline constexpr double kProbClip = 1e-7;   // BCE probability clamp
inline constexpr double kDiceSmooth = 1e-6; // Dice denominator smoothing

/// Mean binary cross-entropy over pixels, probabilities clamped away
/// from 0 and 1.
double bce(const SoftMask& pred, const BinaryMask& gt);

/// 1 - 2*sum(P*M) / (sum(P) + sum(M) + smoothing).
double dice_loss(const SoftMask& pred, const BinaryMask& gt);

/// Mean over hypotheses of (BCE + Dice loss).
double seg_loss(const std::vector<SoftMask>& preds, const BinaryMask& gt);

/// BCE weighted by exp(-gamma * |signed distance|) of the target, so
/// errors near the target boundary dominate.
double boundary_weighted_bce(const SoftMask& pred, const BinaryMask& gt, double gamma = 10.0);

/// Regression target for the quality head; identical to soft_iou.
double quality_target(const SoftMask& pred, const BinaryMask& gt);

/// Boundary-loss weight over the global training step: 0 before 1000,
/// linear to 1 across [1000, 1500), 1 afterwards.
double boundary_warmup(std::int64_t step);

/// One refinement step's loss: seg_loss over the K hypotheses, the
/// quality-head regression penalty, and the warmup-scheduled boundary
/// term.
double refiner_step_loss(const std::vector<SoftMask>& mask_probs, const std::vector<double>& quality_scores,
                         const BinaryMask& gt, std::int64_t step, double lambda_iou);

} // namespace maskpath
