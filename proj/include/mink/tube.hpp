#pragma once

// Tube functions: eps -> Lebesgue measure of the closed eps-neighborhood of a
// bounded set in R^N, together with the backend's error model.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "mink/interval_union.hpp"
#include "mink/set_spec.hpp"

namespace mink {

enum class TubeKind { exact_1d, lifted, product, monte_carlo, grid };

std::string_view to_string(TubeKind kind);

struct TubeSample {
  double value = 0.0;
  // Deterministic kinds: bound on |error|. Stochastic kinds: one standard error.
  double abs_error = 0.0;
};

struct ErrorModel {
  // Deterministic kinds guarantee |error| <= rel_bound * value.
  double rel_bound = 0.0;
  bool stochastic = false;
};

/// Value-semantic handle to a tube evaluator. Copies share the evaluator,
/// which is immutable apart from an internal thread-safe memo cache.
class TubeFunction {
 public:
  using Evaluator = std::function<TubeSample(double)>;

  TubeFunction(int ambient_n, TubeKind kind, ErrorModel error_model, Evaluator evaluator,
               double resolution_floor = 0.0);

  int ambient_n() const { return ambient_n_; }
  TubeKind kind() const { return kind_; }
  const ErrorModel& error_model() const { return error_model_; }
  bool deterministic() const { return !error_model_.stochastic; }
  /// Smallest eps the backend resolves exactly; 0 when unlimited.
  double resolution_floor() const { return resolution_floor_; }

  /// Throws DomainError for eps <= 0, ResolutionError below the floor.
  TubeSample sample(double eps) const;
  double operator()(double eps) const { return sample(eps).value; }

  /// Like sample() but below the resolution floor returns the floor-level
  /// over-approximation instead of throwing. Used by integrating consumers
  /// whose nodes approach radius zero.
  TubeSample sample_unfloored(double eps) const;

 private:
  int ambient_n_;
  TubeKind kind_;
  ErrorModel error_model_;
  std::shared_ptr<const Evaluator> evaluator_;
  double resolution_floor_;
};

/// Gap structure of a closed subset of the line: total length, and the
/// lengths of the bounded complementary gaps with multiplicities. The
/// eps-neighborhood measure is
///   L + 2 eps + sum_gaps min(g, 2 eps).
class GapProfile {
 public:
  struct Gap {
    double length;
    double multiplicity;
  };

  GapProfile(double total_length, std::vector<Gap> gaps);
  static GapProfile of(const IntervalUnion& u);
  /// Middle-thirds Cantor set resolved to `depth` levels; deeper gaps are
  /// folded into the total length, which is exact for eps >= 3^-(depth+1)/2.
  static GapProfile cantor(int depth);

  double measure(double eps) const;
  std::size_t distinct_gaps() const { return lengths_.size(); }

 private:
  double total_length_;
  std::vector<double> lengths_;              // ascending, distinct
  std::vector<long double> prefix_length_;   // sum of length * multiplicity below index
  std::vector<long double> suffix_count_;    // sum of multiplicity at and above index
};

inline constexpr double kDefaultLiftTol = 1e-10;

TubeFunction exact_tube(const IntervalUnion& u);
TubeFunction exact_tube(GapProfile profile, double resolution_floor = 0.0);
TubeFunction cantor_tube(int depth_cap = kCantorDepthCap);

/// Tube in R^(N+1) of the set embedded in the hyperplane {last coordinate = 0}:
///   meas_{N+1}(U_eps) = 2 int_0^eps meas_N(U_{sqrt(eps^2 - y^2)}) dy,
/// integrated over y = eps sin t, t in [0, pi/2], to relative error tol.
/// Throws UnsupportedError for stochastic inputs.
TubeFunction lift_tube(const TubeFunction& f, double tol = kDefaultLiftTol);

/// Tube of U x [0, 1]: meas_N(U_eps) + meas_{N+1}(U_eps).
TubeFunction product_with_unit_interval(const TubeFunction& f, double tol = kDefaultLiftTol);

/// A SetSpec turned into its exact tube, with construction metadata.
struct RealizedSet {
  SetSpec spec;
  int ambient_n = 1;
  TubeFunction tube;
  double hull_length = 0.0;
  double truncation_eps = 0.0;
  std::size_t generated = 0;
  bool truncated_early = false;
  std::optional<IntervalUnion> set_1d;  // present for non-Cantor 1D kinds
};

RealizedSet realize(const SetSpec& spec, double tol = kDefaultLiftTol);

}  // namespace mink
