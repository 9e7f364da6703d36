#include "pseudosym/bench/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pseudosym/errors.hpp"

namespace pseudosym::bench {

using nlohmann::json;

std::string to_string(Problem p) {
  switch (p) {
    case Problem::harmonic: return "harmonic";
    case Problem::kepler: return "kepler";
    case Problem::fisher: return "fisher";
    case Problem::cgl: return "cgl";
  }
  return "?";
}

std::string to_string(BaseMethod b) { return b == BaseMethod::strang ? "strang" : "s4sim"; }

std::string to_string(Precision p) { return p == Precision::f64 ? "f64" : "extended"; }

Precision parse_precision(const std::string& text) {
  if (text == "f64") return Precision::f64;
  if (text == "extended") return Precision::extended;
  throw ValidationError("precision: expected f64 or extended, got '" + text + "'");
}

namespace {

Problem parse_problem(const std::string& text) {
  for (auto p : {Problem::harmonic, Problem::kepler, Problem::fisher, Problem::cgl})
    if (to_string(p) == text) return p;
  throw ValidationError("problem: unknown value '" + text + "'");
}

BaseMethod parse_base(const std::string& text) {
  if (text == "strang") return BaseMethod::strang;
  if (text == "s4sim") return BaseMethod::s4sim;
  throw ValidationError("base_method: expected strang or s4sim, got '" + text + "'");
}

std::vector<double> dyadic(double first, int count) {
  std::vector<double> out;
  for (int j = 0; j < count; ++j) out.push_back(std::ldexp(first, -j));
  return out;
}

bool integrates_in_time(const std::string& preset) {
  return preset != "ho-table1" && preset != "coeff-audit";
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

const std::map<Problem, std::set<std::string>>& allowed_params() {
  static const std::map<Problem, std::set<std::string>> table{
      {Problem::harmonic, {"q0", "p0"}},
      {Problem::kepler, {"e"}},
      {Problem::fisher, {}},
      {Problem::cgl, {"c1", "c3", "eps"}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"ho-table1",    "ho-energy",    "kepler-order",
                                              "kepler-energy", "fisher-order", "cgl-order",
                                              "coeff-audit"};
  return names;
}

std::string preset_description(const std::string& name) {
  if (name == "ho-table1") return "harmonic oscillator truncation and defect coefficients";
  if (name == "ho-energy") return "harmonic oscillator relative energy error along the evolution";
  if (name == "kepler-order") return "Kepler final-time energy error vs step size";
  if (name == "kepler-energy") return "Kepler energy error along a long integration";
  if (name == "fisher-order") return "Fisher equation successive errors vs step size";
  if (name == "cgl-order") return "complex Ginzburg-Landau successive errors vs step size";
  if (name == "coeff-audit") return "composition coefficients and their arguments per level";
  throw ValidationError("unknown preset '" + name + "'");
}

ExperimentConfig preset_defaults(const std::string& name, bool paper_scale) {
  ExperimentConfig c;
  c.preset = name;
  c.output_path = "results/" + name;
  if (name == "ho-table1") {
    c.problem = Problem::harmonic;
    c.levels = 3;
    c.tau_list = dyadic(0.8, 6);
  } else if (name == "ho-energy") {
    c.problem = Problem::harmonic;
    c.levels = 2;
    c.tau_list = {0.2, 0.1, 0.05};
    c.t_final = paper_scale ? 1e4 : 1e3;
    c.problem_params = {{"q0", 2.5}, {"p0", 0.0}};
  } else if (name == "kepler-order") {
    c.problem = Problem::kepler;
    c.levels = 3;
    c.companion_levels = 2;
    c.tau_list = dyadic(20.0 / 250.0, 6);
    c.t_final = 20;
    c.problem_params = {{"e", 0.6}};
    c.precision = Precision::extended;
  } else if (name == "kepler-energy") {
    c.problem = Problem::kepler;
    c.levels = 3;
    c.tau_list = {0.02};
    c.t_final = paper_scale ? 1e4 : 200;
    c.problem_params = {{"e", 0.6}};
  } else if (name == "fisher-order") {
    c.problem = Problem::fisher;
    c.levels = 2;
    c.companion_levels = 2;
    c.tau_list = paper_scale ? dyadic(0.05, 7) : dyadic(0.05, 5);
    c.t_final = paper_scale ? 10 : 1;
    c.grid_points = 128;
  } else if (name == "cgl-order") {
    c.problem = Problem::cgl;
    c.levels = 2;
    c.companion_levels = 2;
    c.tau_list = paper_scale ? dyadic(0.05, 7) : dyadic(0.05, 5);
    c.t_final = paper_scale ? 10 : 1;
    c.grid_points = 512;
    c.problem_params = {{"c1", 1.0}, {"c3", -2.0}, {"eps", 1.0}};
  } else if (name == "coeff-audit") {
    c.problem = Problem::harmonic;
    c.levels = 4;
  } else {
    throw ValidationError("unknown preset '" + name + "'");
  }
  return c;
}

ExperimentConfig apply_overrides(ExperimentConfig c, const json& doc) {
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  static const std::set<std::string> known{"preset",     "problem",     "base_method",
                                           "levels",     "companion_levels",
                                           "tau_list",   "t_final",
                                           "grid_points", "problem_params", "output_path",
                                           "precision",  "threads"};
  std::vector<std::string> unknown;
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) unknown.push_back(key);
  if (!unknown.empty()) {
    std::string msg = "config: unknown keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ValidationError(msg);
  }
  auto field = [&](const char* key, auto&& apply) {
    if (!doc.contains(key)) return;
    try {
      apply(doc.at(key));
    } catch (const json::exception& e) {
      throw ValidationError(std::string("config: field ") + key + ": " + e.what());
    }
  };
  field("problem", [&](const json& v) {
    if (parse_problem(v.get<std::string>()) != c.problem)
      throw ValidationError("problem: preset " + c.preset + " runs " + to_string(c.problem));
  });
  field("base_method", [&](const json& v) { c.base_method = parse_base(v.get<std::string>()); });
  field("levels", [&](const json& v) { c.levels = v.get<int>(); });
  field("companion_levels", [&](const json& v) { c.companion_levels = v.get<int>(); });
  field("tau_list", [&](const json& v) { c.tau_list = v.get<std::vector<double>>(); });
  field("t_final", [&](const json& v) { c.t_final = v.get<double>(); });
  field("grid_points", [&](const json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ValidationError("grid_points: expected a positive integer");
    c.grid_points = v.get<std::size_t>();
  });
  field("problem_params", [&](const json& v) {
    if (!v.is_object()) throw ValidationError("problem_params: expected an object");
    for (const auto& [key, value] : v.items()) c.problem_params[key] = value.get<double>();
  });
  field("output_path", [&](const json& v) { c.output_path = v.get<std::string>(); });
  field("precision", [&](const json& v) { c.precision = parse_precision(v.get<std::string>()); });
  field("threads", [&](const json& v) { c.threads = v.get<int>(); });
  return c;
}

ExperimentConfig parse_config(const std::string& text, const std::string& preset, bool paper_scale) {
  json doc;
  try {
    doc = text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  std::string name = preset;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ValidationError("config: field preset: expected a string");
    const std::string from_doc = doc["preset"].get<std::string>();
    if (!name.empty() && name != from_doc)
      throw ValidationError("preset: document names " + from_doc + " but " + name + " was requested");
    name = from_doc;
  }
  if (name.empty()) throw ValidationError("preset: no preset given");
  ExperimentConfig c = apply_overrides(preset_defaults(name, paper_scale), doc);
  validate(c);
  return c;
}

void validate(const ExperimentConfig& c) {
  preset_description(c.preset);
  if (c.levels < 1 || c.levels > 4) throw ValidationError("levels: must be in 1..4");
  if (c.companion_levels < 0 || c.companion_levels > 4)
    throw ValidationError("companion_levels: must be in 0..4");
  if (c.threads < 1) throw ValidationError("threads: must be >= 1");
  const bool timed = integrates_in_time(c.preset);
  if (c.preset != "coeff-audit" && c.tau_list.empty())
    throw ValidationError("tau_list: must not be empty");
  for (std::size_t i = 0; i < c.tau_list.size(); ++i) {
    if (!(c.tau_list[i] > 0) || !std::isfinite(c.tau_list[i]))
      throw ValidationError("tau_list: entries must be positive");
    if (i > 0 && !(c.tau_list[i] < c.tau_list[i - 1]))
      throw ValidationError("tau_list: must be strictly decreasing");
  }
  if (timed) {
    if (!(c.t_final > 0) || !std::isfinite(c.t_final))
      throw ValidationError("t_final: must be positive");
    for (double tau : c.tau_list) {
      const double ratio = c.t_final / tau;
      if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw ValidationError("t_final: not an integer multiple of tau = " + std::to_string(tau));
    }
  }
  const bool pde = c.problem == Problem::fisher || c.problem == Problem::cgl;
  if ((pde || c.grid_points != 0) && !is_power_of_two(c.grid_points))
    throw ValidationError("grid_points: must be a power of two >= 2");
  const auto& allowed = allowed_params().at(c.problem);
  for (const auto& [key, value] : c.problem_params) {
    if (!allowed.count(key))
      throw ValidationError("problem_params: unknown key '" + key + "' for " + to_string(c.problem));
    if (!std::isfinite(value)) throw ValidationError("problem_params." + key + ": must be finite");
  }
  if (c.problem == Problem::kepler && c.problem_params.count("e")) {
    const double e = c.problem_params.at("e");
    if (!(e >= 0 && e < 1)) throw ValidationError("problem_params.e: must be in [0, 1)");
  }
  if (c.output_path.empty()) throw ValidationError("output_path: must not be empty");
}

json to_json(const ExperimentConfig& c) {
  json params = json::object();
  for (const auto& [k, v] : c.problem_params) params[k] = v;
  return json{{"preset", c.preset},
              {"problem", to_string(c.problem)},
              {"base_method", to_string(c.base_method)},
              {"levels", c.levels},
              {"companion_levels", c.companion_levels},
              {"tau_list", c.tau_list},
              {"t_final", c.t_final},
              {"grid_points", c.grid_points},
              {"problem_params", params},
              {"output_path", c.output_path},
              {"precision", to_string(c.precision)}};
}

}  // namespace pseudosym::bench
