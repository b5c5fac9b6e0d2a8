#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "maskpath/json_writer.hpp"
#include "maskpath/reward.hpp"

namespace maskpath {

/// Tool-wide configuration. Loaded from a single JSON document; CLI
/// flags override file values; the effective config is echoed into
/// results for provenance. Unknown keys are rejected.
struct ToolConfig {
    int working_height = kWorkingResolution;
    int working_width = kWorkingResolution;
    int refine_steps = 5;
    double raster_tolerance = 0.25;
    int threads = 1;
    std::uint64_t seed = 0;
    std::optional<RewardConfig> reward;

    void validate() const;

    static ToolConfig from_json_text(const std::string& text);
    static ToolConfig from_file(const std::string& path);

    /// Reward block required (reward thresholds ship with no endorsed
    /// defaults, so callers must supply them explicitly).
    const RewardConfig& require_reward() const;

    void write(JsonWriter& out) const;
};

} // namespace maskpath
