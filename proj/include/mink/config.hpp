#pragma once

// Experiment configuration files (YAML).
//
//   schedule: {eps_max: 1.0e-3, eps_min: 1.0e-7, points_per_decade: 8}   # optional
//   window_decades: 2
//   tolerances: {quadrature: 1.0e-10, measurability: 0.02, invariance: 0.02}
//   seed: 1
//   output: out                                                          # optional
//   sets:
//     - name: astring
//       kind: a_string
//       a: 1
//       n_terms: 1000000
//       schedule: {eps_max: 1.0e-3, eps_min: 1.0e-7}                     # optional
//
// Without a schedule, each set gets default_schedule() of its realization.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "mink/estimate.hpp"
#include "mink/invariance.hpp"
#include "mink/set_spec.hpp"

namespace mink {

struct ScheduleConfig {
  double eps_max = 1e-3;
  double eps_min = 1e-7;
  int points_per_decade = 8;
  EpsSchedule build() const { return EpsSchedule(eps_max, eps_min, points_per_decade); }
};

struct NamedSet {
  std::string name;
  SetSpec spec;
  std::optional<ScheduleConfig> schedule;
};

struct ExperimentConfig {
  std::vector<NamedSet> sets;
  std::optional<ScheduleConfig> schedule;
  double window_decades = 2.0;
  double quad_tol = kDefaultLiftTol;
  std::optional<double> measurability_tol;  // backend default when absent
  double invariance_tol = 0.02;
  std::uint64_t seed = 0;
  std::string output;

  const NamedSet& find_set(const std::string& name) const;
  EpsSchedule schedule_for(const NamedSet& set, const RealizedSet& realized) const;
  HarnessOptions harness_options() const;
};

/// Throws ConfigError for malformed content or violated invariants
/// (duplicate names, non-positive tolerances, invalid schedules).
ExperimentConfig parse_config(const std::string& yaml_text);
ExperimentConfig load_config(const std::string& path);

YAML::Node to_yaml(const ExperimentConfig& config);
std::string dump_config(const ExperimentConfig& config);
nlohmann::json to_json(const ExperimentConfig& config);

/// The default set library: point, unit segment, two a-strings, an alpha-orbit
/// and the Cantor set.
ExperimentConfig default_library();

}  // namespace mink
