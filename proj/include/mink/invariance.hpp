#pragma once

// Experiment harness comparing Minkowski contents of a set in R^N with those
// of the same set embedded in R^(N+1).

#include <string>
#include <vector>

#include "mink/errors.hpp"
#include "mink/estimate.hpp"
#include "mink/gamma.hpp"
#include "mink/set_spec.hpp"
#include "mink/tube.hpp"

namespace mink {

/// An error from one harness stage, tagged with that stage's name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct HarnessOptions {
  double quad_tol = kDefaultLiftTol;
  ContentOptions content;
  double invariance_tol = 0.02;
};

/// Base estimate in R^N and lifted estimate in R^(N+1) at one exponent.
struct EmbeddedPair {
  ContentEstimate base;
  ContentEstimate lifted;
  GammaRatio gamma;
};

EmbeddedPair embedded_pair(const RealizedSet& set, double s, const EpsSchedule& sched,
                           const HarnessOptions& opts);

struct EmbeddingReport {
  SetSpec spec;
  double s = 0.0;
  int base_ambient = 1;
  ContentEstimate est_n;
  ContentEstimate est_n1;
  double normalized_ratio = 0.0;  // midpoint of est_n1 over midpoint of est_n, normalized
  GammaRatio gamma_ratio_used;
  double tol = 0.02;
  bool pass = false;
};

EmbeddingReport embedding_report(const RealizedSet& set, double s, const EpsSchedule& sched,
                                 const HarnessOptions& opts = {});
EmbeddingReport embedding_report(const SetSpec& spec, double s, const EpsSchedule& sched,
                                 const HarnessOptions& opts = {});

/// An ordered chain v0 <= v1 <= ... checked within per-value error bars.
struct ChainCheck {
  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<double> error_bars;
  std::vector<double> slacks;  // values[i+1] - values[i]
  std::size_t violations = 0;  // slacks below -(bar_i + bar_{i+1})
  bool holds = true;
};

ChainCheck check_chain(std::vector<std::string> labels, std::vector<double> values,
                       std::vector<double> error_bars);

struct SandwichReport {
  SetSpec spec;
  double s = 0.0;
  int base_ambient = 1;
  EmbeddedPair pair;
  ChainCheck chain;  // normalized: lower_N, lower_N+1, upper_N+1, upper_N
  // Report-only probes of questions the theory leaves open; never a verdict.
  double probe_lower_gap = 0.0;  // normalized lower_N+1 - lower_N
  double probe_upper_gap = 0.0;  // normalized upper_N - upper_N+1
};

SandwichReport sandwich_check(const RealizedSet& set, double s, const EpsSchedule& sched,
                              const HarnessOptions& opts = {});
SandwichReport sandwich_check(const SetSpec& spec, double s, const EpsSchedule& sched,
                              const HarnessOptions& opts = {});

/// Crude ambient bounds with constants 2^(-(N-1-s)/2) and 2 on unnormalized
/// contents, and how much the gamma-ratio constants improve on them.
struct AmbientBoundsReport {
  SetSpec spec;
  double s = 0.0;
  int base_ambient = 1;
  EmbeddedPair pair;
  ChainCheck chain;
  double lower_constant = 0.0;
  double upper_constant = 2.0;
  double gamma_ratio = 0.0;
  double lower_constant_slack = 0.0;  // gamma_ratio - lower_constant
  double upper_constant_slack = 0.0;  // upper_constant - gamma_ratio
};

AmbientBoundsReport ambient_bounds_check(const RealizedSet& set, double s,
                                         const EpsSchedule& sched, const HarnessOptions& opts = {});
AmbientBoundsReport ambient_bounds_check(const SetSpec& spec, double s, const EpsSchedule& sched,
                                         const HarnessOptions& opts = {});

/// 2^(-(N-1-s)/2) and 2 against gamma_ratio(N, s); pure arithmetic.
struct ConstantComparison {
  int ambient_n = 1;
  double s = 0.0;
  double lower_constant = 0.0;
  double gamma_ratio = 0.0;
  double upper_constant = 2.0;
};

ConstantComparison compare_constants(int ambient_n, double s);

struct ProductReport {
  SetSpec spec_a;
  SetSpec spec_b;
  double s = 0.0;
  double r = 0.0;
  int dim_a = 1;
  int dim_b = 1;
  std::string product_backend;  // "unit_interval_identity" or "grid"
  ContentEstimate est_a;
  ContentEstimate est_b;
  ContentEstimate est_ab;
  double lower_constant = 0.0;  // sqrt(2)^(-(M+N-s-r)/2)
  ChainCheck chain;
};

/// Cartesian-product bounds. Supported: B is a unit-length interval (product
/// tube by the unit-interval identity), or A and B are both finite point sets
/// on the line (product tube by the grid backend). Otherwise UnsupportedError.
ProductReport product_inequality_check(const SetSpec& spec_a, const SetSpec& spec_b, double s,
                                       double r, const EpsSchedule& sched,
                                       const HarnessOptions& opts = {});

struct ExtremalityMember {
  SetSpec spec;
  double fitted_d = 0.0;
  bool eligible = false;
  EmbeddedPair pair;
  double ratio_lower = 0.0;  // lower_N+1 / lower_N, unnormalized
  double ratio_upper = 0.0;
  bool lower_ok = false;     // ratio_lower >= gamma_ratio - tol
  bool upper_ok = false;     // ratio_upper <= gamma_ratio + tol
  bool measurable = false;
  bool attains = false;      // measurable and both ratios within tol of gamma_ratio
};

struct ExtremalityReport {
  double s = 0.0;
  GammaRatio gamma;
  double tol = 0.0;
  std::vector<ExtremalityMember> members;
  bool holds = false;
};

/// Members are (set, schedule) pairs. The ratio tolerance is
/// invariance_tol * gamma_ratio(N, s).
struct ExtremalityInput {
  RealizedSet set;
  EpsSchedule schedule;
};

ExtremalityReport extremality_check(const std::vector<ExtremalityInput>& family, double s,
                                        const HarnessOptions& opts = {});
ExtremalityReport extremality_check(const std::vector<SetSpec>& specs, double s,
                                        const EpsSchedule& sched, const HarnessOptions& opts = {});

}  // namespace mink
