#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "maskpath/mask.hpp"
#include "maskpath/metrics.hpp"

namespace maskpath {

/// One refiner invocation: K mask hypotheses (post-sigmoid probabilities
/// at the working resolution) and one quality score per hypothesis.
struct RefinerOutput {
    std::vector<SoftMask> hypotheses;
    std::vector<double> scores;
};

/// Behavioral interface for a mask refiner. Whatever conditioning a
/// concrete refiner needs (vision features, targets) is bound at
/// construction; the loop only ever hands over the current mask estimate.
/// Implementations must return the same K on every call.
class RefinerInterface {
public:
    virtual ~RefinerInterface() = default;
    virtual RefinerOutput step(const SoftMask& current) = 0;
};

/// Test double standing in for the neural refiner. Hypothesis k blends
/// the current mask toward the target with factor blend/(k+1), so the
/// first hypothesis is strictly best; scores are the true soft IoU of
/// each hypothesis against the target.
class OracleRefiner : public RefinerInterface {
public:
    OracleRefiner(BinaryMask target, double blend, int hypotheses = 3);

    RefinerOutput step(const SoftMask& current) override;

    const BinaryMask& target() const { return target_; }

private:
    BinaryMask target_;
    double blend_;
    int hypotheses_;
};

struct RefineTraceStep {
    std::vector<SoftMask> hypotheses;
    std::vector<double> scores;
    int selected = 0;
};

struct RefineTrace {
    std::vector<RefineTraceStep> steps;
};

/// Run the iterative refinement loop for exactly `steps` invocations.
/// Each step feeds back the highest-scoring hypothesis (ties to the
/// lowest index); nothing but the selected mask crosses between steps.
std::pair<SoftMask, RefineTrace> refine(RefinerInterface& refiner, const SoftMask& initial, int steps = 5);

struct StepLossReport {
    std::vector<double> per_step;
    double mean = 0.0;
};

/// Per-step refiner losses over a completed trace, all K hypotheses per
/// step, evaluated at a fixed global training step for the boundary
/// warmup.
StepLossReport eval_step_losses(const RefineTrace& trace, const BinaryMask& gt, double lambda_iou,
                                std::int64_t global_step);

} // namespace maskpath
