#include "mink/invariance.hpp"

#include <cmath>
#include <string>

#include "mink/point_cloud.hpp"

namespace mink {

namespace {

template <typename F>
auto stage(const char* name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e.what());
  }
}

// Error bar of a window extreme: backend error plus the window spread.
double lower_bar(const ContentEstimate& e) {
  return e.backend_rel_error * e.lower + (e.upper - e.lower);
}
double upper_bar(const ContentEstimate& e) {
  return e.backend_rel_error * e.upper + (e.upper - e.lower);
}

}  // namespace

EmbeddedPair embedded_pair(const RealizedSet& set, double s, const EpsSchedule& sched,
                           const HarnessOptions& opts) {
  EmbeddedPair pair;
  pair.gamma = stage("gamma", [&] { return gamma_ratio(set.ambient_n, s); });
  pair.base = stage("estimate_base", [&] { return content_estimate(set.tube, s, sched, opts.content); });
  const TubeFunction lifted = stage("lift", [&] { return lift_tube(set.tube, opts.quad_tol); });
  pair.lifted = stage("estimate_lifted", [&] { return content_estimate(lifted, s, sched, opts.content); });
  return pair;
}

EmbeddingReport embedding_report(const RealizedSet& set, double s, const EpsSchedule& sched,
                                 const HarnessOptions& opts) {
  EmbeddingReport rep;
  rep.spec = set.spec;
  rep.s = s;
  rep.base_ambient = set.ambient_n;
  rep.tol = opts.invariance_tol;
  EmbeddedPair pair = embedded_pair(set, s, sched, opts);
  rep.est_n = std::move(pair.base);
  rep.est_n1 = std::move(pair.lifted);
  rep.gamma_ratio_used = pair.gamma;
  rep.normalized_ratio = rep.est_n1.normalized_midpoint() / rep.est_n.normalized_midpoint();
  rep.pass = std::abs(rep.normalized_ratio - 1.0) <= rep.tol &&
             rep.est_n.verdict == Verdict::measurable && rep.est_n1.verdict == Verdict::measurable;
  return rep;
}

EmbeddingReport embedding_report(const SetSpec& spec, double s, const EpsSchedule& sched,
                                 const HarnessOptions& opts) {
  const RealizedSet set = stage("realize", [&] { return realize(spec, opts.quad_tol); });
  return embedding_report(set, s, sched, opts);
}

ChainCheck check_chain(std::vector<std::string> labels, std::vector<double> values,
                       std::vector<double> error_bars) {
  ChainCheck c;
  c.labels = std::move(labels);
  c.values = std::move(values);
  c.error_bars = std::move(error_bars);
  for (std::size_t i = 0; i + 1 < c.values.size(); ++i) {
    const double slack = c.values[i + 1] - c.values[i];
    c.slacks.push_back(slack);
    if (slack < -(c.error_bars[i] + c.error_bars[i + 1])) ++c.violations;
  }
  c.holds = c.violations == 0;
  return c;
}

SandwichReport sandwich_check(const RealizedSet& set, double s, const EpsSchedule& sched,
                              const HarnessOptions& opts) {
  SandwichReport rep;
  rep.spec = set.spec;
  rep.s = s;
  rep.base_ambient = set.ambient_n;
  rep.pair = embedded_pair(set, s, sched, opts);
  const auto& b = rep.pair.base;
  const auto& l = rep.pair.lifted;
  rep.chain = check_chain(
      {"lower_N", "lower_N+1", "upper_N+1", "upper_N"},
      {b.normalized_lower, l.normalized_lower, l.normalized_upper, b.normalized_upper},
      {lower_bar(b) / b.gamma_norm, lower_bar(l) / l.gamma_norm, upper_bar(l) / l.gamma_norm,
       upper_bar(b) / b.gamma_norm});
  rep.probe_lower_gap = l.normalized_lower - b.normalized_lower;
  rep.probe_upper_gap = b.normalized_upper - l.normalized_upper;
  return rep;
}

SandwichReport sandwich_check(const SetSpec& spec, double s, const EpsSchedule& sched,
                              const HarnessOptions& opts) {
  const RealizedSet set = stage("realize", [&] { return realize(spec, opts.quad_tol); });
  return sandwich_check(set, s, sched, opts);
}

ConstantComparison compare_constants(int ambient_n, double s) {
  ConstantComparison c;
  c.ambient_n = ambient_n;
  c.s = s;
  c.gamma_ratio = gamma_ratio(ambient_n, s).value;
  c.lower_constant = std::pow(2.0, -(ambient_n - 1 - s) / 2.0);
  c.upper_constant = 2.0;
  return c;
}

AmbientBoundsReport ambient_bounds_check(const RealizedSet& set, double s,
                                         const EpsSchedule& sched, const HarnessOptions& opts) {
  AmbientBoundsReport rep;
  rep.spec = set.spec;
  rep.s = s;
  rep.base_ambient = set.ambient_n;
  rep.pair = embedded_pair(set, s, sched, opts);
  const ConstantComparison k = compare_constants(set.ambient_n, s);
  rep.lower_constant = k.lower_constant;
  rep.upper_constant = k.upper_constant;
  rep.gamma_ratio = k.gamma_ratio;
  rep.lower_constant_slack = k.gamma_ratio - k.lower_constant;
  rep.upper_constant_slack = k.upper_constant - k.gamma_ratio;
  const auto& b = rep.pair.base;
  const auto& l = rep.pair.lifted;
  rep.chain = check_chain({"c_lo*lower_N", "lower_N+1", "upper_N+1", "2*upper_N"},
                          {k.lower_constant * b.lower, l.lower, l.upper, k.upper_constant * b.upper},
                          {k.lower_constant * lower_bar(b), lower_bar(l), upper_bar(l),
                           k.upper_constant * upper_bar(b)});
  return rep;
}

AmbientBoundsReport ambient_bounds_check(const SetSpec& spec, double s, const EpsSchedule& sched,
                                         const HarnessOptions& opts) {
  const RealizedSet set = stage("realize", [&] { return realize(spec, opts.quad_tol); });
  return ambient_bounds_check(set, s, sched, opts);
}

ProductReport product_inequality_check(const SetSpec& spec_a, const SetSpec& spec_b, double s,
                                       double r, const EpsSchedule& sched,
                                       const HarnessOptions& opts) {
  ProductReport rep;
  rep.spec_a = spec_a;
  rep.spec_b = spec_b;
  rep.s = s;
  rep.r = r;
  const RealizedSet a = stage("realize_a", [&] { return realize(spec_a, opts.quad_tol); });
  const RealizedSet b = stage("realize_b", [&] { return realize(spec_b, opts.quad_tol); });
  rep.dim_a = a.ambient_n;
  rep.dim_b = b.ambient_n;

  const auto* b_intervals = std::get_if<IntervalsSpec>(&spec_b.kind);
  const bool b_is_unit = b.set_1d && b_intervals && b.set_1d->size() == 1 &&
                         b.set_1d->total_length() == 1.0;
  const auto* a_points = std::get_if<PointsSpec>(&spec_a.kind);
  const auto* b_points = std::get_if<PointsSpec>(&spec_b.kind);

  TubeFunction product_tube = a.tube;
  if (b_is_unit) {
    rep.product_backend = "unit_interval_identity";
    product_tube = stage("product", [&] { return product_with_unit_interval(a.tube, opts.quad_tol); });
  } else if (a_points && b_points) {
    rep.product_backend = "grid";
    product_tube = stage("product", [&] {
      return grid_tube(product_cloud(a_points->points, b_points->points));
    });
  } else {
    throw UnsupportedError(
        "product_inequality_check: need B = a unit interval, or A and B both point sets");
  }

  rep.est_a = stage("estimate_a", [&] { return content_estimate(a.tube, s, sched, opts.content); });
  rep.est_b = stage("estimate_b", [&] { return content_estimate(b.tube, r, sched, opts.content); });
  rep.est_ab = stage("estimate_product",
                     [&] { return content_estimate(product_tube, s + r, sched, opts.content); });
  rep.lower_constant = std::pow(std::sqrt(2.0), -(rep.dim_a + rep.dim_b - s - r) / 2.0);

  const auto& ea = rep.est_a;
  const auto& eb = rep.est_b;
  const auto& ep = rep.est_ab;
  const double low = ea.lower * eb.lower;
  const double high = ea.upper * eb.upper;
  rep.chain = check_chain(
      {"c*lower_A*lower_B", "lower_AxB", "upper_AxB", "upper_A*upper_B"},
      {rep.lower_constant * low, ep.lower, ep.upper, high},
      {rep.lower_constant * (ea.lower * lower_bar(eb) + eb.lower * lower_bar(ea)), lower_bar(ep),
       upper_bar(ep), ea.upper * upper_bar(eb) + eb.upper * upper_bar(ea)});
  return rep;
}

ExtremalityReport extremality_check(const std::vector<ExtremalityInput>& family, double s,
                                        const HarnessOptions& opts) {
  if (family.empty()) throw DomainError("extremality_check: empty family");
  ExtremalityReport rep;
  rep.s = s;
  const int n = family.front().set.ambient_n;
  rep.gamma = gamma_ratio(n, s);
  rep.tol = opts.invariance_tol * rep.gamma.value;
  rep.holds = true;
  std::size_t eligible = 0;
  for (const auto& input : family) {
    if (input.set.ambient_n != n) {
      throw DomainError("extremality_check: family members must share the ambient dimension");
    }
    ExtremalityMember m;
    m.spec = input.set.spec;
    m.fitted_d = stage("fit", [&] { return box_dimension_fit(input.set.tube, input.schedule); }).fitted_d;
    m.pair = embedded_pair(input.set, s, input.schedule, opts);
    const auto& b = m.pair.base;
    const auto& l = m.pair.lifted;
    const bool finite_positive = b.verdict == Verdict::measurable || b.verdict == Verdict::nondegenerate;
    m.eligible = std::abs(m.fitted_d - s) <= 0.05 || finite_positive;
    m.ratio_lower = l.lower / b.lower;
    m.ratio_upper = l.upper / b.upper;
    m.lower_ok = m.ratio_lower >= rep.gamma.value - rep.tol;
    m.upper_ok = m.ratio_upper <= rep.gamma.value + rep.tol;
    m.measurable = b.verdict == Verdict::measurable && l.verdict == Verdict::measurable;
    m.attains = m.measurable && std::abs(m.ratio_lower - rep.gamma.value) <= rep.tol &&
                std::abs(m.ratio_upper - rep.gamma.value) <= rep.tol;
    if (m.eligible) {
      ++eligible;
      if (!m.lower_ok || !m.upper_ok || (m.measurable && !m.attains)) rep.holds = false;
    }
    rep.members.push_back(std::move(m));
  }
  if (eligible == 0) rep.holds = false;
  return rep;
}

ExtremalityReport extremality_check(const std::vector<SetSpec>& specs, double s,
                                        const EpsSchedule& sched, const HarnessOptions& opts) {
  std::vector<ExtremalityInput> family;
  family.reserve(specs.size());
  for (const auto& spec : specs) {
    family.push_back({stage("realize", [&] { return realize(spec, opts.quad_tol); }), sched});
  }
  return extremality_check(family, s, opts);
}

}  // namespace mink
