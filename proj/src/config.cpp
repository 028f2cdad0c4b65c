#include "mink/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "mink/errors.hpp"

namespace mink {

namespace {

template <typename T>
T read(const YAML::Node& node, const char* key, T fallback) {
  const YAML::Node value = node[key];
  if (!value) return fallback;
  try {
    return value.as<T>();
  } catch (const YAML::Exception& e) {
    throw ConfigError("config field '" + std::string(key) + "': " + e.what());
  }
}

ScheduleConfig read_schedule(const YAML::Node& node) {
  if (!node.IsMap()) throw ConfigError("schedule must be a mapping");
  ScheduleConfig s;
  if (!node["eps_max"] || !node["eps_min"]) {
    throw ConfigError("schedule requires eps_max and eps_min");
  }
  s.eps_max = read<double>(node, "eps_max", s.eps_max);
  s.eps_min = read<double>(node, "eps_min", s.eps_min);
  s.points_per_decade = read<int>(node, "points_per_decade", s.points_per_decade);
  try {
    (void)s.build();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid schedule: ") + e.what());
  }
  return s;
}

YAML::Node schedule_yaml(const ScheduleConfig& s) {
  YAML::Node node;
  node["eps_max"] = s.eps_max;
  node["eps_min"] = s.eps_min;
  node["points_per_decade"] = s.points_per_decade;
  return node;
}

nlohmann::json schedule_json(const ScheduleConfig& s) {
  return {{"eps_max", s.eps_max}, {"eps_min", s.eps_min}, {"points_per_decade", s.points_per_decade}};
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

const NamedSet& ExperimentConfig::find_set(const std::string& name) const {
  for (const auto& s : sets) {
    if (s.name == name) return s;
  }
  throw ConfigError("no set named '" + name + "' in the configuration");
}

EpsSchedule ExperimentConfig::schedule_for(const NamedSet& set, const RealizedSet& realized) const {
  if (set.schedule) return set.schedule->build();
  if (schedule) return schedule->build();
  return default_schedule(realized);
}

HarnessOptions ExperimentConfig::harness_options() const {
  HarnessOptions opts;
  opts.quad_tol = quad_tol;
  opts.content.window_decades = window_decades;
  opts.content.rel_tol = measurability_tol;
  opts.invariance_tol = invariance_tol;
  return opts;
}

ExperimentConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config root must be a mapping");
  ExperimentConfig cfg;
  if (root["schedule"]) cfg.schedule = read_schedule(root["schedule"]);
  cfg.window_decades = read<double>(root, "window_decades", cfg.window_decades);
  require_positive(cfg.window_decades, "window_decades");
  if (const YAML::Node tol = root["tolerances"]) {
    if (!tol.IsMap()) throw ConfigError("tolerances must be a mapping");
    cfg.quad_tol = read<double>(tol, "quadrature", cfg.quad_tol);
    if (tol["measurability"]) cfg.measurability_tol = read<double>(tol, "measurability", 0.02);
    cfg.invariance_tol = read<double>(tol, "invariance", cfg.invariance_tol);
  }
  require_positive(cfg.quad_tol, "tolerances.quadrature");
  if (cfg.measurability_tol) require_positive(*cfg.measurability_tol, "tolerances.measurability");
  require_positive(cfg.invariance_tol, "tolerances.invariance");
  cfg.seed = read<std::uint64_t>(root, "seed", cfg.seed);
  cfg.output = read<std::string>(root, "output", cfg.output);

  const YAML::Node sets = root["sets"];
  if (!sets || !sets.IsSequence() || sets.size() == 0) {
    throw ConfigError("config needs a non-empty 'sets' list");
  }
  std::set<std::string> names;
  for (const auto& node : sets) {
    NamedSet ns;
    ns.name = read<std::string>(node, "name", "");
    if (ns.name.empty()) throw ConfigError("every set needs a non-empty name");
    if (!names.insert(ns.name).second) throw ConfigError("duplicate set name '" + ns.name + "'");
    ns.spec = set_spec_from_yaml(node);
    if (node["schedule"]) ns.schedule = read_schedule(node["schedule"]);
    cfg.sets.push_back(std::move(ns));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

YAML::Node to_yaml(const ExperimentConfig& cfg) {
  YAML::Node root;
  if (cfg.schedule) root["schedule"] = schedule_yaml(*cfg.schedule);
  root["window_decades"] = cfg.window_decades;
  root["tolerances"]["quadrature"] = cfg.quad_tol;
  if (cfg.measurability_tol) root["tolerances"]["measurability"] = *cfg.measurability_tol;
  root["tolerances"]["invariance"] = cfg.invariance_tol;
  root["seed"] = cfg.seed;
  if (!cfg.output.empty()) root["output"] = cfg.output;
  for (const auto& ns : cfg.sets) {
    YAML::Node node;
    node["name"] = ns.name;
    for (const auto& kv : to_yaml(ns.spec)) node[kv.first] = kv.second;
    if (ns.schedule) node["schedule"] = schedule_yaml(*ns.schedule);
    root["sets"].push_back(node);
  }
  return root;
}

std::string dump_config(const ExperimentConfig& cfg) {
  YAML::Emitter out;
  out << to_yaml(cfg);
  return std::string(out.c_str()) + "\n";
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["schedule"] = cfg.schedule ? schedule_json(*cfg.schedule) : nlohmann::json(nullptr);
  j["window_decades"] = cfg.window_decades;
  j["tolerances"] = {{"quadrature", cfg.quad_tol},
                     {"measurability", cfg.measurability_tol ? nlohmann::json(*cfg.measurability_tol)
                                                             : nlohmann::json(nullptr)},
                     {"invariance", cfg.invariance_tol}};
  j["seed"] = cfg.seed;
  j["output"] = cfg.output;
  auto sets = nlohmann::json::array();
  for (const auto& ns : cfg.sets) {
    nlohmann::json s = to_json(ns.spec);
    s["name"] = ns.name;
    if (ns.schedule) s["schedule"] = schedule_json(*ns.schedule);
    sets.push_back(s);
  }
  j["sets"] = sets;
  return j;
}

ExperimentConfig default_library() {
  ExperimentConfig cfg;
  cfg.sets.push_back({"point", SetSpec{PointsSpec{{0.0}}}, std::nullopt});
  cfg.sets.push_back({"segment", SetSpec{IntervalsSpec{{{0.0, 1.0}}}}, std::nullopt});
  cfg.sets.push_back({"a_string_1", SetSpec{AStringSpec{1.0, 1000000}}, std::nullopt});
  cfg.sets.push_back({"a_string_2", SetSpec{AStringSpec{2.0, 1000000}}, std::nullopt});
  cfg.sets.push_back({"alpha_orbit_2", SetSpec{AlphaOrbitSpec{2.0, 0.5, 1000000}}, std::nullopt});
  cfg.sets.push_back({"cantor", SetSpec{CantorSpec{}}, std::nullopt});
  return cfg;
}

}  // namespace mink
