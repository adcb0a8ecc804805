#pragma once

#include <json.hpp>

#include "sdq/cs_pipeline.hpp"
#include "sdq/frame_pipeline.hpp"

namespace sdq {

// Configs round-trip losslessly through these. Unknown keys are rejected so a
// typo cannot silently fall back to a default.

nlohmann::json to_json(const FrameSweepConfig& c);
FrameSweepConfig frame_sweep_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CsSweepConfig& c);
CsSweepConfig cs_sweep_config_from_json(const nlohmann::json& j);

/// Parses a JSON document, converting parse errors to ConfigError.
nlohmann::json parse_json_text(const std::string& text);

}  // namespace sdq
