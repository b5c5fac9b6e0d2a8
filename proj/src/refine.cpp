#include "maskpath/refine.hpp"

#include <cmath>

namespace maskpath {

OracleRefiner::OracleRefiner(BinaryMask target, double blend, int hypotheses)
    : target_(std::move(target)), blend_(blend), hypotheses_(hypotheses) {
    if (!(blend > 0.0 && blend <= 1.0)) {
        throw Error(ErrorCode::ConfigInvalid, "blend must lie in (0,1]");
    }
    if (hypotheses < 1) {
        throw Error(ErrorCode::ConfigInvalid, "need at least one hypothesis");
    }
}

RefinerOutput OracleRefiner::step(const SoftMask& current) {
    if (current.height != target_.height || current.width != target_.width) {
        throw Error(ErrorCode::DimensionMismatch, "mask estimate does not match target resolution");
    }
    RefinerOutput out;
    out.hypotheses.reserve(hypotheses_);
    out.scores.reserve(hypotheses_);
    for (int k = 0; k < hypotheses_; ++k) {
        const double b = blend_ / (k + 1);
        SoftMask hyp(current.height, current.width);
        for (std::size_t i = 0; i < hyp.values.size(); ++i) {
            hyp.values[i] = (1.0 - b) * current.values[i] + b * (target_.bits[i] ? 1.0 : 0.0);
        }
        out.scores.push_back(soft_iou(hyp, target_));
        out.hypotheses.push_back(std::move(hyp));
    }
    return out;
}

std::pair<SoftMask, RefineTrace> refine(RefinerInterface& refiner, const SoftMask& initial, int steps) {
    if (steps < 1) {
        throw Error(ErrorCode::ConfigInvalid, "step count must be >= 1");
    }
    SoftMask current = initial;
    RefineTrace trace;
    trace.steps.reserve(steps);
    int expected_k = -1;
    for (int t = 0; t < steps; ++t) {
        RefinerOutput out = refiner.step(current);
        const int k = static_cast<int>(out.hypotheses.size());
        if (k < 1 || out.scores.size() != out.hypotheses.size()) {
            throw Error(ErrorCode::RefinerContractViolation, "hypothesis and score counts disagree");
        }
        if (expected_k < 0) {
            expected_k = k;
        } else if (k != expected_k) {
            throw Error(ErrorCode::RefinerContractViolation,
                        "K changed between steps: " + std::to_string(expected_k) + " -> " + std::to_string(k));
        }
        int selected = 0;
        for (int m = 0; m < k; ++m) {
            const SoftMask& hyp = out.hypotheses[m];
            if (hyp.height != initial.height || hyp.width != initial.width) {
                throw Error(ErrorCode::RefinerContractViolation, "hypothesis at wrong resolution");
            }
            if (!std::isfinite(out.scores[m])) {
                throw Error(ErrorCode::RefinerContractViolation, "non-finite quality score");
            }
            if (out.scores[m] > out.scores[selected]) selected = m;
        }
        current = out.hypotheses[selected]; // only the mask value crosses steps
        trace.steps.push_back(RefineTraceStep{std::move(out.hypotheses), std::move(out.scores), selected});
    }
    return {current, std::move(trace)};
}

StepLossReport eval_step_losses(const RefineTrace& trace, const BinaryMask& gt, double lambda_iou,
                                std::int64_t global_step) {
    StepLossReport report;
    report.per_step.reserve(trace.steps.size());
    double total = 0.0;
    for (const RefineTraceStep& step : trace.steps) {
        const double loss = refiner_step_loss(step.hypotheses, step.scores, gt, global_step, lambda_iou);
        report.per_step.push_back(loss);
        total += loss;
    }
    report.mean = trace.steps.empty() ? 0.0 : total / static_cast<double>(trace.steps.size());
    return report;
}

} // namespace maskpath
