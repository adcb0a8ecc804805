#include "sdq/config_io.hpp"

#include <set>
#include <string>

#include "sdq/errors.hpp"

namespace sdq {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key()))
      throw ConfigError(std::string(what) + ": unknown key '" + it.key() + "'");
  }
}

template <typename T>
T get_key(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

template <typename T>
T get_key_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

std::string step_rule_name(StepRule r) {
  return r == StepRule::fixed ? "fixed" : "coarse_theorem";
}
StepRule step_rule_from(const std::string& s) {
  if (s == "fixed") return StepRule::fixed;
  if (s == "coarse_theorem") return StepRule::coarse_theorem;
  throw ConfigError("key 'step_rule' must be 'fixed' or 'coarse_theorem'");
}
std::string levels_rule_name(LevelsRule r) {
  return r == LevelsRule::fixed ? "fixed" : "greedy_theorem";
}
LevelsRule levels_rule_from(const std::string& s) {
  if (s == "fixed") return LevelsRule::fixed;
  if (s == "greedy_theorem") return LevelsRule::greedy_theorem;
  throw ConfigError("key 'levels_rule' must be 'fixed' or 'greedy_theorem'");
}

}  // namespace

json to_json(const FrameSweepConfig& c) {
  return json{{"k", c.k},
              {"lambdas", c.lambdas},
              {"trials", c.trials},
              {"scheme", to_string(c.scheme)},
              {"order", c.order},
              {"c13", c.c13},
              {"levels", c.levels},
              {"step", c.step},
              {"step_rule", step_rule_name(c.step_rule)},
              {"step_scale", c.step_scale},
              {"levels_rule", levels_rule_name(c.levels_rule)},
              {"family", to_string(c.family)},
              {"normalization", to_string(c.normalization)},
              {"seed", c.seed},
              {"seed_offset", c.seed_offset},
              {"jobs", c.jobs},
              {"out", c.out}};
}

FrameSweepConfig frame_sweep_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"k", "lambdas", "trials", "scheme", "order", "c13", "levels", "step",
                       "step_rule", "step_scale", "levels_rule", "family", "normalization",
                       "seed", "seed_offset", "jobs", "out"},
                      "frame sweep config");
  FrameSweepConfig c;
  c.k = get_key<std::size_t>(j, "k");
  c.lambdas = get_key<std::vector<double>>(j, "lambdas");
  c.trials = get_key<std::size_t>(j, "trials");
  c.scheme = scheme_from_string(get_key<std::string>(j, "scheme"));
  c.order = get_key_or<int>(j, "order", 0);
  c.c13 = get_key_or<double>(j, "c13", kDefaultC13);
  c.levels = get_key<std::int64_t>(j, "levels");
  c.step = get_key<double>(j, "step");
  c.step_rule = step_rule_from(get_key_or<std::string>(j, "step_rule", "fixed"));
  c.step_scale = get_key_or<double>(j, "step_scale", 1.05);
  c.levels_rule = levels_rule_from(get_key_or<std::string>(j, "levels_rule", "fixed"));
  c.family = family_from_string(get_key<std::string>(j, "family"));
  c.normalization =
      normalization_from_string(get_key<std::string>(j, "normalization"));
  c.seed = get_key<std::uint64_t>(j, "seed");
  c.seed_offset = get_key_or<std::uint64_t>(j, "seed_offset", 0);
  c.jobs = get_key_or<int>(j, "jobs", 0);
  c.out = get_key_or<std::string>(j, "out", "");
  return c;
}

json to_json(const CsSweepConfig& c) {
  return json{{"n", c.n},
              {"k", c.k},
              {"r", c.r},
              {"lambdas", c.lambdas},
              {"trials", c.trials},
              {"levels", c.levels},
              {"step", c.step},
              {"min_magnitude", c.min_magnitude},
              {"max_magnitude", c.max_magnitude},
              {"family", to_string(c.family)},
              {"normalization", to_string(c.normalization)},
              {"seed", c.seed},
              {"seed_offset", c.seed_offset},
              {"jobs", c.jobs},
              {"out", c.out}};
}

CsSweepConfig cs_sweep_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"n", "k", "r", "lambdas", "trials", "levels", "step", "min_magnitude",
                       "max_magnitude", "family", "normalization", "seed", "seed_offset",
                       "jobs", "out"},
                      "cs sweep config");
  CsSweepConfig c;
  c.n = get_key<std::size_t>(j, "n");
  c.k = get_key<std::size_t>(j, "k");
  c.r = get_key<int>(j, "r");
  c.lambdas = get_key<std::vector<double>>(j, "lambdas");
  c.trials = get_key<std::size_t>(j, "trials");
  c.levels = get_key_or<std::int64_t>(j, "levels", 0);
  c.step = get_key<double>(j, "step");
  c.min_magnitude = get_key<double>(j, "min_magnitude");
  c.max_magnitude = get_key<double>(j, "max_magnitude");
  c.family = family_from_string(get_key<std::string>(j, "family"));
  c.normalization =
      normalization_from_string(get_key<std::string>(j, "normalization"));
  c.seed = get_key<std::uint64_t>(j, "seed");
  c.seed_offset = get_key_or<std::uint64_t>(j, "seed_offset", 0);
  c.jobs = get_key_or<int>(j, "jobs", 0);
  c.out = get_key_or<std::string>(j, "out", "");
  return c;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ConfigError(std::string("malformed JSON: ") + ex.what());
  }
}

}  // namespace sdq
