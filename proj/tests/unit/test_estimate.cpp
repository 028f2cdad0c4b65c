#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "mink/errors.hpp"
#include "mink/estimate.hpp"
#include "mink/point_cloud.hpp"
#include "mink/tube.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using mink::EpsSchedule;
using mink::Verdict;

namespace {

// meas(eps) = c * eps^(1 - d) in R^1: box dimension d, content c at s = d.
mink::TubeFunction power_tube(double c, double d) {
  return mink::TubeFunction(1, mink::TubeKind::exact_1d, {1e-15, false}, [=](double e) {
    const double v = c * std::pow(e, 1.0 - d);
    return mink::TubeSample{v, 1e-15 * v};
  });
}

}  // namespace

TEST_CASE("schedule is geometric and hits both ends") {
  const EpsSchedule s(1e-2, 1e-6, 8);
  const auto& v = s.values();
  REQUIRE(v.size() == 33);
  CHECK(v.front() == 1e-2);
  CHECK(v.back() == 1e-6);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK_THAT(v[i] / v[i - 1], WithinRel(s.ratio(), 1e-12));
  CHECK_THAT(s.decades(), WithinAbs(4.0, 1e-12));
  CHECK_THROWS_AS(EpsSchedule(1e-6, 1e-2), mink::DomainError);
  CHECK_THROWS_AS(EpsSchedule(1e-2, 1e-6, 3), mink::DomainError);
}

TEST_CASE("fit recovers an exact power law") {
  const auto fit = mink::box_dimension_fit(power_tube(3.0, 0.37), EpsSchedule(1e-2, 1e-8));
  CHECK_THAT(fit.fitted_d, WithinAbs(0.37, 1e-10));
  CHECK(fit.ci_halfwidth < 1e-8);
  CHECK(fit.residual < 1e-10);
  CHECK(fit.trace.size() == 49);
}

TEST_CASE("fitted dimension of the reference sets") {
  const EpsSchedule sched(1e-4, 1e-8);
  const auto a1 = mink::realize(mink::SetSpec{mink::AStringSpec{1.0, 1000000}});
  CHECK_THAT(mink::box_dimension_fit(a1.tube, sched).fitted_d, WithinAbs(0.5, 0.01));
  const auto cantor = mink::realize(mink::SetSpec{mink::CantorSpec{}});
  CHECK_THAT(mink::box_dimension_fit(cantor.tube, EpsSchedule(1e-2, 1e-8)).fitted_d,
             WithinAbs(std::log(2.0) / std::log(3.0), 0.01));
  const auto point = mink::exact_tube(mink::make_points(std::vector<double>{0.0}));
  CHECK_THAT(mink::box_dimension_fit(point, sched).fitted_d, WithinAbs(0.0, 1e-12));
  const auto seg = mink::exact_tube(mink::IntervalUnion::from_intervals({{0.0, 1.0}}));
  CHECK_THAT(mink::box_dimension_fit(seg, EpsSchedule(1e-3, 1e-6)).fitted_d, WithinAbs(1.0, 0.01));
}

TEST_CASE("fit rejects noisy stochastic tubes") {
  const mink::PointCloud cloud(2, {{0.0, 0.0}});
  const auto noisy = mink::mc_tube(cloud, 1000, 1);
  CHECK_THROWS_AS(mink::box_dimension_fit(noisy, EpsSchedule(0.1, 0.01)), mink::DataError);
}

TEST_CASE("content of a point in R and in R^2") {
  const EpsSchedule sched(1e-1, 1e-5);
  const auto base = mink::exact_tube(mink::make_points(std::vector<double>{0.0}));
  const auto est = mink::content_estimate(base, 0.0, sched);
  CHECK_THAT(est.lower, WithinRel(2.0, 1e-12));
  CHECK_THAT(est.upper, WithinRel(2.0, 1e-12));
  CHECK_THAT(est.normalized_midpoint(), WithinRel(1.0, 1e-12));
  CHECK(est.verdict == Verdict::measurable);

  const auto lifted = mink::content_estimate(mink::lift_tube(base), 0.0, sched);
  CHECK_THAT(lifted.lower, WithinRel(std::numbers::pi, 1e-8));
  CHECK_THAT(lifted.upper, WithinRel(std::numbers::pi, 1e-8));
  CHECK_THAT(lifted.normalized_midpoint(), WithinRel(1.0, 1e-8));
}

TEST_CASE("window covers the final decades only") {
  const EpsSchedule sched(1e-1, 1e-6, 8);
  const auto est = mink::content_estimate(power_tube(1.0, 0.5), 0.5, sched);
  CHECK(est.full_trace.size() == sched.values().size());
  CHECK(est.window_trace.size() == 17);
  CHECK_THAT(est.window_trace.front().first, WithinRel(1e-4, 1e-12));
}

TEST_CASE("verdicts on synthetic power laws") {
  const EpsSchedule sched(1e-2, 1e-8);
  const auto tube = power_tube(2.0, 0.5);
  CHECK(mink::content_estimate(tube, 0.5, sched).verdict == Verdict::measurable);
  // Exponent below the dimension: q grows as eps shrinks.
  CHECK(mink::content_estimate(tube, 0.3, sched).verdict == Verdict::degenerate_infinite);
  // Above: q collapses.
  CHECK(mink::content_estimate(tube, 0.7, sched).verdict == Verdict::degenerate_zero);
}

TEST_CASE("cantor content oscillates and is not measurable") {
  const auto cantor = mink::cantor_tube();
  const double d = std::log(2.0) / std::log(3.0);
  const auto est = mink::content_estimate(cantor, d, EpsSchedule(1e-2, 1e-8));
  CHECK(est.verdict == Verdict::nondegenerate);
  CHECK(est.upper / est.lower > 1.01);
}

TEST_CASE("explicit tolerance changes the verdict threshold") {
  const auto cantor = mink::cantor_tube();
  const double d = std::log(2.0) / std::log(3.0);
  mink::ContentOptions loose;
  loose.rel_tol = 0.2;
  CHECK(mink::content_estimate(cantor, d, EpsSchedule(1e-2, 1e-8), loose).verdict ==
        Verdict::measurable);
}

TEST_CASE("content rejects out-of-range exponents") {
  CHECK_THROWS_AS(mink::content_estimate(power_tube(1.0, 0.5), 1.5, EpsSchedule(1e-2, 1e-4)),
                  mink::DomainError);
}

TEST_CASE("default schedule respects truncation and resolution floors") {
  const auto a = mink::realize(mink::SetSpec{mink::AStringSpec{1.0, 1000000}});
  const auto s = mink::default_schedule(a);
  CHECK_THAT(s.eps_max(), WithinRel(0.1, 1e-12));
  CHECK_THAT(s.eps_min(), WithinRel(a.truncation_eps, 1e-12));
  const auto c = mink::realize(mink::SetSpec{mink::CantorSpec{}});
  CHECK(mink::default_schedule(c).eps_min() >= c.tube.resolution_floor());
}
