#pragma once

// Experiment configuration and preset defaults.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace pseudosym::bench {

enum class Problem { harmonic, kepler, fisher, cgl };
enum class BaseMethod { strang, s4sim };
enum class Precision { f64, extended };

std::string to_string(Problem p);
std::string to_string(BaseMethod b);
std::string to_string(Precision p);
Precision parse_precision(const std::string& text);

struct ExperimentConfig {
  std::string preset;
  Problem problem = Problem::harmonic;
  BaseMethod base_method = BaseMethod::strang;
  int levels = 1;
  int companion_levels = 0;  // levels of the other base's family run alongside (order runs)
  std::vector<double> tau_list;
  double t_final = 0;  // 0 where the preset does not integrate in time
  std::size_t grid_points = 0;
  std::map<std::string, double> problem_params;
  std::string output_path = "results";
  Precision precision = Precision::f64;
  int threads = 1;
};

/// Names accepted by run_preset, in listing order.
const std::vector<std::string>& preset_names();

/// One-line description of a preset.
std::string preset_description(const std::string& name);

/// Defaults of a preset; `paper_scale` selects the long-horizon settings.
/// Throws ValidationError for an unknown name.
ExperimentConfig preset_defaults(const std::string& name, bool paper_scale = false);

/// Applies a JSON document over the defaults of `preset` (or of the
/// document's own "preset" key when `preset` is empty) and validates.
/// Unknown keys are rejected in a single error listing all of them.
ExperimentConfig parse_config(const std::string& text, const std::string& preset = "",
                              bool paper_scale = false);

ExperimentConfig apply_overrides(ExperimentConfig config, const nlohmann::json& overrides);

/// Throws ValidationError naming the offending field.
void validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace pseudosym::bench
