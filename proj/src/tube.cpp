#include "mink/tube.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <unordered_map>

#include "mink/errors.hpp"
#include "mink/quadrature.hpp"

namespace mink {

namespace {

// Summation error of the long-double prefix sums plus the final rounding.
constexpr double kExactRelBound = 1e-14;
constexpr std::size_t kLiftCacheCapacity = std::size_t{1} << 20;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view to_string(TubeKind kind) {
  switch (kind) {
    case TubeKind::exact_1d: return "exact_1d";
    case TubeKind::lifted: return "lifted";
    case TubeKind::product: return "product";
    case TubeKind::monte_carlo: return "monte_carlo";
    case TubeKind::grid: return "grid";
  }
  return "unknown";
}

TubeFunction::TubeFunction(int ambient_n, TubeKind kind, ErrorModel error_model,
                           Evaluator evaluator, double resolution_floor)
    : ambient_n_(ambient_n),
      kind_(kind),
      error_model_(error_model),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      resolution_floor_(resolution_floor) {
  if (ambient_n < 1) throw DomainError("TubeFunction: ambient dimension must be >= 1");
}

TubeSample TubeFunction::sample(double eps) const {
  if (eps < resolution_floor_) {
    throw ResolutionError("tube evaluated at eps=" + std::to_string(eps) +
                          " below its resolution floor " + std::to_string(resolution_floor_));
  }
  return sample_unfloored(eps);
}

TubeSample TubeFunction::sample_unfloored(double eps) const {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("tube evaluated at non-positive or non-finite eps");
  }
  return (*evaluator_)(eps);
}

GapProfile::GapProfile(double total_length, std::vector<Gap> gaps)
    : total_length_(total_length) {
  std::sort(gaps.begin(), gaps.end(),
            [](const Gap& a, const Gap& b) { return a.length < b.length; });
  std::vector<double> mult;
  for (const auto& g : gaps) {
    if (!(g.length > 0.0) || !(g.multiplicity > 0.0)) {
      throw DomainError("GapProfile: gaps need positive length and multiplicity");
    }
    if (!lengths_.empty() && lengths_.back() == g.length) {
      mult.back() += g.multiplicity;
    } else {
      lengths_.push_back(g.length);
      mult.push_back(g.multiplicity);
    }
  }
  const std::size_t n = lengths_.size();
  prefix_length_.assign(n + 1, 0.0L);
  suffix_count_.assign(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    prefix_length_[i + 1] =
        prefix_length_[i] + static_cast<long double>(lengths_[i]) * mult[i];
  }
  for (std::size_t i = n; i-- > 0;) {
    suffix_count_[i] = suffix_count_[i + 1] + mult[i];
  }
}

GapProfile GapProfile::of(const IntervalUnion& u) {
  if (u.empty()) throw DomainError("GapProfile: empty set");
  std::vector<Gap> gaps;
  for (double g : u.gaps()) gaps.push_back({g, 1.0});
  return GapProfile(u.total_length(), std::move(gaps));
}

GapProfile GapProfile::cantor(int depth) {
  if (depth < 0 || depth > kCantorDepthCap) {
    throw DomainError("GapProfile::cantor: depth must lie in [0, 40]");
  }
  std::vector<Gap> gaps;
  for (int j = 1; j <= depth; ++j) {
    gaps.push_back({std::pow(3.0, -j), std::ldexp(1.0, j - 1)});
  }
  // The 2^depth level intervals of length 3^-depth.
  return GapProfile(std::pow(2.0 / 3.0, depth), std::move(gaps));
}

double GapProfile::measure(double eps) const {
  if (!(eps >= 0.0)) throw DomainError("GapProfile::measure: eps must be >= 0");
  const double width = 2.0 * eps;
  // Gaps no wider than 2 eps are filled completely.
  const auto split = static_cast<std::size_t>(
      std::upper_bound(lengths_.begin(), lengths_.end(), width) - lengths_.begin());
  const long double total = static_cast<long double>(total_length_) + width +
                            prefix_length_[split] + width * suffix_count_[split];
  return static_cast<double>(total);
}

TubeFunction exact_tube(GapProfile profile, double resolution_floor) {
  auto shared = std::make_shared<const GapProfile>(std::move(profile));
  return TubeFunction(
      1, TubeKind::exact_1d, ErrorModel{kExactRelBound, false},
      [shared](double eps) {
        const double v = shared->measure(eps);
        return TubeSample{v, kExactRelBound * v};
      },
      resolution_floor);
}

TubeFunction exact_tube(const IntervalUnion& u) { return exact_tube(GapProfile::of(u)); }

TubeFunction cantor_tube(int depth_cap) {
  return exact_tube(GapProfile::cantor(depth_cap), 0.5 * std::pow(3.0, -(depth_cap + 1)));
}

namespace {

double effective_tol(const TubeFunction& inner, double tol) {
  return std::max(tol, 10.0 * inner.error_model().rel_bound);
}

class LiftEvaluator {
 public:
  LiftEvaluator(TubeFunction inner, double tol) : inner_(std::move(inner)), tol_(tol) {}

  TubeSample operator()(double eps) const {
    const auto key = std::bit_cast<std::uint64_t>(eps);
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    auto integrand = [this, eps](double t) {
      const double c = std::cos(t);
      return 2.0 * eps * c * inner_.sample_unfloored(eps * c).value;
    };
    // Refining below the inner tube's own error only chases its noise.
    QuadratureOptions opts;
    opts.rel_tol = effective_tol(inner_, tol_);
    const QuadratureResult q = integrate_adaptive(integrand, 0.0, 0.5 * std::numbers::pi, opts);
    const TubeSample out{q.value,
                         q.abs_error + inner_.error_model().rel_bound * std::abs(q.value)};
    std::lock_guard lock(mutex_);
    if (cache_.size() >= kLiftCacheCapacity) cache_.clear();
    cache_.emplace(key, out);
    return out;
  }

 private:
  TubeFunction inner_;
  double tol_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, TubeSample> cache_;
};

}  // namespace

TubeFunction lift_tube(const TubeFunction& f, double tol) {
  if (!f.deterministic() || f.kind() == TubeKind::grid) {
    throw UnsupportedError("lift_tube: tube kind '" + std::string(to_string(f.kind())) +
                           "' cannot be lifted");
  }
  if (!(tol > 0.0)) throw DomainError("lift_tube: tol must be positive");
  auto state = std::make_shared<LiftEvaluator>(f, tol);
  return TubeFunction(
      f.ambient_n() + 1, TubeKind::lifted,
      ErrorModel{effective_tol(f, tol) + f.error_model().rel_bound, false},
      [state](double eps) { return (*state)(eps); }, f.resolution_floor());
}

TubeFunction product_with_unit_interval(const TubeFunction& f, double tol) {
  const TubeFunction lifted = lift_tube(f, tol);
  return TubeFunction(
      f.ambient_n() + 1, TubeKind::product,
      ErrorModel{std::max(f.error_model().rel_bound, lifted.error_model().rel_bound), false},
      [f, lifted](double eps) {
        const TubeSample base = f.sample_unfloored(eps);
        const TubeSample up = lifted.sample_unfloored(eps);
        return TubeSample{base.value + up.value, base.abs_error + up.abs_error};
      },
      f.resolution_floor());
}

RealizedSet realize(const SetSpec& spec, double tol) {
  spec.validate();
  RealizedSet out{spec, spec.ambient_n(), exact_tube(make_points(std::vector<double>{0.0})),
                  0.0, 0.0, 0, false, std::nullopt};
  auto from_union = [&](IntervalUnion u) {
    out.tube = exact_tube(u);
    out.hull_length = u.hull_length();
    out.generated = u.size();
    out.set_1d = std::move(u);
  };
  auto from_construction = [&](Construction c) {
    out.truncation_eps = c.truncation_eps;
    out.truncated_early = c.truncated_early;
    from_union(std::move(c.set));
    out.generated = c.generated;
  };
  std::visit(Overloaded{
                 [&](const PointsSpec& p) { from_union(make_points(p.points)); },
                 [&](const IntervalsSpec& s) { from_union(IntervalUnion::from_intervals(s.intervals)); },
                 [&](const AStringSpec& s) { from_construction(a_string(s.a, s.n_terms)); },
                 [&](const AlphaOrbitSpec& s) {
                   from_construction(alpha_orbit(s.alpha, s.x0, s.n_terms));
                 },
                 [&](const CantorSpec& s) {
                   out.tube = cantor_tube(s.depth_cap);
                   out.hull_length = 1.0;
                   out.generated = std::size_t{0};
                 },
                 [&](const ProductUnitIntervalSpec& s) {
                   RealizedSet inner = realize(*s.inner, tol);
                   out.tube = product_with_unit_interval(inner.tube, tol);
                   out.hull_length = std::max(inner.hull_length, 1.0);
                   out.truncation_eps = inner.truncation_eps;
                   out.generated = inner.generated;
                   out.truncated_early = inner.truncated_early;
                 },
             },
             spec.kind);
  return out;
}

}  // namespace mink
