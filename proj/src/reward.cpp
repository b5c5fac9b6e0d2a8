#include "maskpath/reward.hpp"

namespace maskpath {

void RewardConfig::validate() const {
    if (!(tau_box > 0.0 && tau_box < 1.0) || !(tau_mask > 0.0 && tau_mask < 1.0)) {
        throw Error(ErrorCode::ConfigInvalid, "tau_box and tau_mask must lie in (0,1)");
    }
    if (!(beta > alpha) || alpha < 0.0) {
        throw Error(ErrorCode::ConfigInvalid, "coverage bias requires beta > alpha >= 0");
    }
    if (!(eps_frac > 0.0)) {
        throw Error(ErrorCode::ConfigInvalid, "eps_frac must be positive");
    }
    if (l_max < 1) {
        throw Error(ErrorCode::ConfigInvalid, "l_max must be positive");
    }
}

Rollout make_rollout(const NormalizedBox& box, const std::string& path_text, int l_max) {
    Rollout rollout;
    rollout.box = box;
    try {
        rollout.tokens = tokenize(path_text);
    } catch (const Error& e) {
        rollout.parsed = ParseOutcome{std::nullopt, e.code(), e.detail()};
        return rollout;
    }
    rollout.parsed = try_parse(rollout.tokens, ParseOptions{l_max, false});
    return rollout;
}

Rollout make_rollout(const NormalizedBox& box, std::vector<PathToken> tokens, int l_max) {
    Rollout rollout;
    rollout.box = box;
    rollout.tokens = std::move(tokens);
    rollout.parsed = try_parse(rollout.tokens, ParseOptions{l_max, false});
    return rollout;
}

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::Box: return "box";
        case Regime::Coverage: return "coverage";
        case Regime::Boundary: return "boundary";
    }
    return "?";
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> classify_rollouts(const std::vector<Rollout>& group) {
    if (group.empty()) {
        throw Error(ErrorCode::EmptyGroup, "rollout group is empty");
    }
    std::vector<std::size_t> valid, invalid;
    for (std::size_t i = 0; i < group.size(); ++i) {
        (group[i].valid() ? valid : invalid).push_back(i);
    }
    return {valid, invalid};
}

GroupRewardReport group_reward(const std::vector<Rollout>& group, const BinaryMask& gt, const RewardConfig& cfg) {
    cfg.validate();
    if (gt.empty()) {
        throw Error(ErrorCode::EmptyMask, "target mask has no foreground");
    }
    const auto [valid, invalid] = classify_rollouts(group);

    GroupRewardReport report;
    report.rewards.assign(group.size(), 0.0);
    report.valid_count = static_cast<int>(valid.size());
    if (valid.empty()) {
        // no valid mean exists; report the earliest regime with zero rewards
        report.regime = Regime::Box;
        return report;
    }

    const NormalizedBox target_box = mask_to_box(gt);
    std::vector<BinaryMask> masks(group.size());
    std::vector<double> box_ious(group.size(), 0.0);
    std::vector<double> tverskys(group.size(), 0.0);
    double box_sum = 0.0;
    double tversky_sum = 0.0;
    for (std::size_t i : valid) {
        masks[i] = rasterize(group[i].box, *group[i].parsed.path, gt.height, gt.width);
        box_ious[i] = box_iou(group[i].box, target_box);
        tverskys[i] = tversky(masks[i], gt, cfg.alpha, cfg.beta);
        box_sum += box_ious[i];
        tversky_sum += tverskys[i];
    }
    report.mean_box_iou = box_sum / static_cast<double>(valid.size());
    report.mean_tversky = tversky_sum / static_cast<double>(valid.size());

    if (report.mean_box_iou < cfg.tau_box) {
        report.regime = Regime::Box;
    } else if (report.mean_tversky < cfg.tau_mask) {
        report.regime = Regime::Coverage;
    } else {
        report.regime = Regime::Boundary;
    }

    for (std::size_t i : valid) {
        switch (report.regime) {
            case Regime::Box: report.rewards[i] = box_ious[i]; break;
            case Regime::Coverage: report.rewards[i] = tverskys[i]; break;
            case Regime::Boundary: report.rewards[i] = boundary_iou(masks[i], gt, cfg.eps_frac); break;
        }
    }
    return report;
}

double reward_single(const Rollout& rollout, const BinaryMask& gt, Regime regime, const RewardConfig& cfg) {
    cfg.validate();
    if (!rollout.valid()) {
        throw Error(ErrorCode::InvalidRollout, "rollout did not parse");
    }
    if (gt.empty()) {
        throw Error(ErrorCode::EmptyMask, "target mask has no foreground");
    }
    switch (regime) {
        case Regime::Box:
            return box_iou(rollout.box, mask_to_box(gt));
        case Regime::Coverage:
            return tversky(rasterize(rollout.box, *rollout.parsed.path, gt.height, gt.width), gt, cfg.alpha,
                           cfg.beta);
        case Regime::Boundary:
            return boundary_iou(rasterize(rollout.box, *rollout.parsed.path, gt.height, gt.width), gt,
                                cfg.eps_frac);
    }
    throw Error(ErrorCode::ConfigInvalid, "unknown regime");
}

} // namespace maskpath
