#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maskpath/mask.hpp"
#include "maskpath/metrics.hpp"
#include "maskpath/path.hpp"
#include "maskpath/raster.hpp"

namespace maskpath {

/// Thresholds and shape parameters for the piecewise group reward.
/// There are no endorsed defaults; every value must come from config.
struct RewardConfig {
    double tau_box = 0.0;
    double tau_mask = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double eps_frac = 0.05;
    int l_max = kDefaultMaxTokens;

    void validate() const;
};

/// One sampled (box, path) generation. Invalid iff the token stream does
/// not parse under the grammar.
struct Rollout {
    NormalizedBox box;
    std::vector<PathToken> tokens;
    ParseOutcome parsed;

    bool valid() const { return parsed.ok(); }
};

Rollout make_rollout(const NormalizedBox& box, const std::string& path_text, int l_max = kDefaultMaxTokens);
Rollout make_rollout(const NormalizedBox& box, std::vector<PathToken> tokens, int l_max = kDefaultMaxTokens);

enum class Regime {
    Box,
    Coverage,
    Boundary,
};

const char* regime_name(Regime regime);

struct GroupRewardReport {
    std::vector<double> rewards; // aligned with the input group; invalid slots are 0
    Regime regime = Regime::Box;
    double mean_box_iou = 0.0;  // over valid rollouts
    double mean_tversky = 0.0;  // over valid rollouts
    int valid_count = 0;
};

/// Indices of valid and invalid rollouts, in group order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> classify_rollouts(const std::vector<Rollout>& group);

/// The piecewise group reward. Each valid rollout is rasterized at the
/// target mask's native resolution; group means over valid rollouts pick
/// the regime (box IoU below tau_box -> Box; else Tversky below tau_mask
/// -> Coverage; else Boundary) and every valid rollout is scored with
/// that regime's metric. Invalid rollouts score 0 and never enter the
/// means. A group with no valid rollout reports the Box regime with all
/// rewards 0.
GroupRewardReport group_reward(const std::vector<Rollout>& group, const BinaryMask& gt, const RewardConfig& cfg);

/// Regime-dispatched score for a single valid rollout.
double reward_single(const Rollout& rollout, const BinaryMask& gt, Regime regime, const RewardConfig& cfg);

} // namespace maskpath
