#include "maskpath/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace maskpath {

namespace {

void require_same_dims(int ha, int wa, int hb, int wb) {
    if (ha != hb || wa != wb) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::to_string(ha) + "x" + std::to_string(wa) + " vs " + std::to_string(hb) + "x" +
                        std::to_string(wb));
    }
}

} // namespace

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
    require_same_dims(pred.height, pred.width, gt.height, gt.width);
    ConfusionCounts counts;
    for (std::size_t i = 0; i < pred.bits.size(); ++i) {
        const bool p = pred.bits[i] != 0;
        const bool g = gt.bits[i] != 0;
        counts.tp += p && g;
        counts.fp += p && !g;
        counts.fn += !p && g;
    }
    return counts;
}

double iou(const BinaryMask& a, const BinaryMask& b) {
    const ConfusionCounts c = confusion(a, b);
    const std::int64_t uni = c.tp + c.fp + c.fn;
    if (uni == 0) return 1.0;
    return static_cast<double>(c.tp) / static_cast<double>(uni);
}

double box_iou(const NormalizedBox& a, const NormalizedBox& b) {
    const double ax0 = a.cx - a.w / 2.0, ax1 = a.cx + a.w / 2.0;
    const double ay0 = a.cy - a.h / 2.0, ay1 = a.cy + a.h / 2.0;
    const double bx0 = b.cx - b.w / 2.0, bx1 = b.cx + b.w / 2.0;
    const double by0 = b.cy - b.h / 2.0, by1 = b.cy + b.h / 2.0;
    const double iw = std::min(ax1, bx1) - std::max(ax0, bx0);
    const double ih = std::min(ay1, by1) - std::max(ay0, by0);
    if (iw <= 0.0 || ih <= 0.0) return 0.0;
    const double inter = iw * ih;
    const double uni = a.w * a.h + b.w * b.h - inter;
    return inter / uni;
}

void CIoUAccumulator::update(const BinaryMask& pred, const BinaryMask& gt) {
    const ConfusionCounts c = confusion(pred, gt);
    intersection_sum += c.tp;
    union_sum += c.tp + c.fp + c.fn;
    samples += 1;
}

void CIoUAccumulator::merge(const CIoUAccumulator& other) {
    intersection_sum += other.intersection_sum;
    union_sum += other.union_sum;
    samples += other.samples;
}

double CIoUAccumulator::final() const {
    if (union_sum == 0) {
        throw Error(ErrorCode::EmptyAccumulator, "pooled union is zero");
    }
    return static_cast<double>(intersection_sum) / static_cast<double>(union_sum);
}

double tversky(const BinaryMask& pred, const BinaryMask& gt, double alpha, double beta) {
    if (alpha < 0.0 || beta < 0.0) {
        throw Error(ErrorCode::ValueOutOfRange, "alpha and beta must be non-negative");
    }
    const ConfusionCounts c = confusion(pred, gt);
    if (c.tp == 0 && c.fp == 0 && c.fn == 0) return 1.0;
    const double denom = static_cast<double>(c.tp) + alpha * static_cast<double>(c.fp) +
                         beta * static_cast<double>(c.fn);
    if (denom == 0.0) return 0.0; // tp==0 with alpha or beta zero
    return static_cast<double>(c.tp) / denom;
}

double boundary_iou(const BinaryMask& pred, const BinaryMask& gt, double eps_frac) {
    require_same_dims(pred.height, pred.width, gt.height, gt.width);
    if (!(eps_frac > 0.0)) {
        throw Error(ErrorCode::ValueOutOfRange, "eps fraction must be positive");
    }
    const double diag = std::sqrt(static_cast<double>(gt.height) * gt.height +
                                  static_cast<double>(gt.width) * gt.width);
    const double eps = eps_frac * diag;
    return iou(boundary_band(pred, eps), boundary_band(gt, eps));
}

double soft_iou(const SoftMask& pred, const BinaryMask& gt) {
    require_same_dims(pred.height, pred.width, gt.height, gt.width);
    double inter = 0.0;
    double pred_sum = 0.0;
    std::int64_t gt_sum = 0;
    for (std::size_t i = 0; i < pred.values.size(); ++i) {
        pred_sum += pred.values[i];
        if (gt.bits[i]) {
            inter += pred.values[i];
            ++gt_sum;
        }
    }
    const double denom = pred_sum + static_cast<double>(gt_sum) - inter;
    if (denom == 0.0) return 1.0;
    return inter / denom;
}

double bce(const SoftMask& pred, const BinaryMask& gt) {
    require_same_dims(pred.height, pred.width, gt.height, gt.width);
    double total = 0.0;
    for (std::size_t i = 0; i < pred.values.size(); ++i) {
        const double p = std::clamp(pred.values[i], kProbClip, 1.0 - kProbClip);
        total += gt.bits[i] ? -std::log(p) : -std::log(1.0 - p);
    }
    return total / static_cast<double>(pred.values.size());
}

double dice_loss(const SoftMask& pred, const BinaryMask& gt) {
    require_same_dims(pred.height, pred.width, gt.height, gt.width);
    double inter = 0.0;
    double pred_sum = 0.0;
    std::int64_t gt_sum = 0;
    for (std::size_t i = 0; i < pred.values.size(); ++i) {
        pred_sum += pred.values[i];
        if (gt.bits[i]) {
            inter += pred.values[i];
            ++gt_sum;
        }
    }
    return 1.0 - 2.0 * inter / (pred_sum + static_cast<double>(gt_sum) + kDiceSmooth);
}

double seg_loss(const std::vector<SoftMask>& preds, const BinaryMask& gt) {
    if (preds.empty()) {
        throw Error(ErrorCode::KMismatch, "need at least one hypothesis");
    }
    double total = 0.0;
    for (const SoftMask& pred : preds) {
        total += bce(pred, gt) + dice_loss(pred, gt);
    }
    return total / static_cast<double>(preds.size());
}

double boundary_weighted_bce(const SoftMask& pred, const BinaryMask& gt, double gamma) {
    require_same_dims(pred.height, pred.width, gt.height, gt.width);
    const SignedDistanceMap dist = signed_distance_normalized(gt);
    double weighted = 0.0;
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < pred.values.size(); ++i) {
        const double w = std::exp(-gamma * std::abs(dist.values[i]));
        const double p = std::clamp(pred.values[i], kProbClip, 1.0 - kProbClip);
        const double pixel_bce = gt.bits[i] ? -std::log(p) : -std::log(1.0 - p);
        weighted += w * pixel_bce;
        weight_sum += w;
    }
    return weighted / (weight_sum + kDiceSmooth);
}

double quality_target(const SoftMask& pred, const BinaryMask& gt) {
    return soft_iou(pred, gt);
}

double boundary_warmup(std::int64_t step) {
    if (step < 1000) return 0.0;
    if (step >= 1500) return 1.0;
    return static_cast<double>(step - 1000) / 500.0;
}

double refiner_step_loss(const std::vector<SoftMask>& mask_probs, const std::vector<double>& quality_scores,
                         const BinaryMask& gt, std::int64_t step, double lambda_iou) {
    if (mask_probs.empty() || mask_probs.size() != quality_scores.size()) {
        throw Error(ErrorCode::KMismatch,
                    std::to_string(mask_probs.size()) + " hypotheses vs " + std::to_string(quality_scores.size()) +
                        " scores");
    }
    const double seg = seg_loss(mask_probs, gt);
    double quality = 0.0;
    double boundary = 0.0;
    const double warmup = boundary_warmup(step);
    for (std::size_t k = 0; k < mask_probs.size(); ++k) {
        const double target = quality_target(mask_probs[k], gt);
        const double diff = quality_scores[k] - target;
        quality += diff * diff;
        if (warmup > 0.0) {
            boundary += boundary_weighted_bce(mask_probs[k], gt);
        }
    }
    const double k_count = static_cast<double>(mask_probs.size());
    return seg + lambda_iou * quality / k_count + warmup * boundary / k_count;
}

} // namespace maskpath
