#pragma once

#include <string>

#include <json.hpp>

#include "pseudosym/bench/config.hpp"
#include "pseudosym/bench/result_table.hpp"

namespace pseudosym::bench {

/// Runs a validated configuration. Singularities inside a (method, tau) cell
/// become nan cells plus a Failure entry; other errors propagate.
PresetResult run(const ExperimentConfig& config);

/// preset_defaults + overrides + validate + run.
PresetResult run_preset(const std::string& name, const nlohmann::json& overrides = nlohmann::json::object(),
                        bool paper_scale = false);

}  // namespace pseudosym::bench
