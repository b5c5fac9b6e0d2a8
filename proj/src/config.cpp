#include "maskpath/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace maskpath {

void ToolConfig::validate() const {
    if (working_height < 1 || working_width < 1) {
        throw Error(ErrorCode::ConfigInvalid, "working resolution must be positive");
    }
    if (refine_steps < 1) {
        throw Error(ErrorCode::ConfigInvalid, "refine_steps must be >= 1");
    }
    if (!(raster_tolerance > 0.0)) {
        throw Error(ErrorCode::ConfigInvalid, "raster_tolerance must be positive");
    }
    if (threads < 1) {
        throw Error(ErrorCode::ConfigInvalid, "threads must be >= 1");
    }
    if (reward) reward->validate();
}

namespace {

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw Error(ErrorCode::ConfigInvalid, "unknown key \"" + key + "\" in " + where);
        }
    }
}

RewardConfig reward_from_json(const nlohmann::json& j) {
    reject_unknown_keys(j, {"tau_box", "tau_mask", "alpha", "beta", "eps_frac", "l_max"}, "reward config");
    RewardConfig cfg;
    cfg.tau_box = j.at("tau_box").get<double>();
    cfg.tau_mask = j.at("tau_mask").get<double>();
    cfg.alpha = j.at("alpha").get<double>();
    cfg.beta = j.at("beta").get<double>();
    cfg.eps_frac = j.value("eps_frac", 0.05);
    cfg.l_max = j.value("l_max", kDefaultMaxTokens);
    cfg.validate();
    return cfg;
}

} // namespace

ToolConfig ToolConfig::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorCode::ConfigInvalid, "config must be a JSON object");
    }
    reject_unknown_keys(
        j, {"working_resolution", "refine_steps", "raster_tolerance", "threads", "seed", "reward"}, "config");
    ToolConfig cfg;
    if (j.contains("working_resolution")) {
        const auto& wr = j["working_resolution"];
        if (!wr.is_array() || wr.size() != 2) {
            throw Error(ErrorCode::ConfigInvalid, "working_resolution must be [H,W]");
        }
        cfg.working_height = wr[0].get<int>();
        cfg.working_width = wr[1].get<int>();
    }
    cfg.refine_steps = j.value("refine_steps", 5);
    cfg.raster_tolerance = j.value("raster_tolerance", 0.25);
    cfg.threads = j.value("threads", 1);
    cfg.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("reward")) {
        cfg.reward = reward_from_json(j["reward"]);
    }
    cfg.validate();
    return cfg;
}

ToolConfig ToolConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ConfigInvalid, "cannot open config " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

const RewardConfig& ToolConfig::require_reward() const {
    if (!reward) {
        throw Error(ErrorCode::ConfigInvalid,
                    "reward thresholds have no defaults; supply a config with a \"reward\" block");
    }
    return *reward;
}

void ToolConfig::write(JsonWriter& out) const {
    out.begin_object();
    out.key("working_resolution").begin_array().value(working_height).value(working_width).end_array();
    out.field("refine_steps", refine_steps);
    out.field("raster_tolerance", raster_tolerance);
    out.field("threads", threads);
    out.field("seed", static_cast<std::int64_t>(seed));
    if (reward) {
        out.key("reward").begin_object();
        out.field("tau_box", reward->tau_box);
        out.field("tau_mask", reward->tau_mask);
        out.field("alpha", reward->alpha);
        out.field("beta", reward->beta);
        out.field("eps_frac", reward->eps_frac);
        out.field("l_max", reward->l_max);
        out.end_object();
    }
    out.end_object();
}

} // namespace maskpath
