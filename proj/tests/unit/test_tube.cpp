#include <cmath>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "mink/errors.hpp"
#include "mink/point_cloud.hpp"
#include "mink/tube.hpp"
#include "oracles/oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using mink::IntervalUnion;

namespace {

oracle::Segments segments_of(const IntervalUnion& u) {
  oracle::Segments s;
  for (const auto& iv : u.intervals()) s.push_back({iv.lo, iv.hi});
  return s;
}

IntervalUnion random_union(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, 1.0), len(0.0, 0.02);
  std::vector<mink::Interval> ivs;
  for (int i = 0; i < n; ++i) {
    const double a = pos(rng);
    ivs.push_back({a, a + (i % 3 == 0 ? 0.0 : len(rng))});
  }
  return IntervalUnion::from_intervals(ivs);
}

}  // namespace

TEST_CASE("exact tube of a point and a segment") {
  const auto point = mink::exact_tube(mink::make_points(std::vector<double>{0.0}));
  const auto seg = mink::exact_tube(IntervalUnion::from_intervals({{0, 1}}));
  for (double eps : {1e-9, 1e-3, 0.5, 7.0}) {
    CHECK(point(eps) == 2.0 * eps);
    CHECK_THAT(seg(eps), WithinRel(1.0 + 2.0 * eps, 1e-15));
  }
  CHECK(point.kind() == mink::TubeKind::exact_1d);
  CHECK_THROWS_AS(point(0.0), mink::DomainError);
}

TEST_CASE("gap profile matches the sweep oracle on random unions") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto u = random_union(seed, 200);
    const auto tube = mink::exact_tube(u);
    for (double eps : {1e-5, 1e-3, 3e-3, 0.02, 0.3}) {
      CHECK_THAT(tube(eps), WithinRel(oracle::tube_1d(segments_of(u), eps), 1e-12));
    }
  }
}

TEST_CASE("analytic cantor profile equals the materialized level") {
  for (int k : {3, 8, 12}) {
    const auto level = mink::cantor_level(k);
    const auto profile = mink::GapProfile::cantor(k);
    for (double eps : {1e-6, 1e-4, 1e-3, 0.05, 0.2}) {
      INFO("k=" << k << " eps=" << eps);
      // The sweep oracle subtracts endpoints near 1, losing ~1e-16/eps.
      CHECK_THAT(profile.measure(eps), WithinRel(oracle::tube_1d(segments_of(level), eps), 1e-10));
    }
  }
}

TEST_CASE("cantor tube refuses eps below its resolution floor") {
  const auto tube = mink::cantor_tube(10);
  CHECK(tube.resolution_floor() > 0.0);
  CHECK_NOTHROW(tube(2.0 * tube.resolution_floor()));
  CHECK_THROWS_AS(tube(0.5 * tube.resolution_floor()), mink::ResolutionError);
}

TEST_CASE("lift of a point and a segment gives disc and stadium areas") {
  const auto point = mink::lift_tube(mink::exact_tube(mink::make_points(std::vector<double>{0.0})));
  const auto seg = mink::lift_tube(mink::exact_tube(IntervalUnion::from_intervals({{0, 1}})));
  CHECK(point.ambient_n() == 2);
  CHECK(point.kind() == mink::TubeKind::lifted);
  for (double eps : {1e-6, 0.1, 1.0, 3.0}) {
    CHECK_THAT(point(eps), WithinRel(std::numbers::pi * eps * eps, 1e-10));
    CHECK_THAT(seg(eps), WithinRel(2.0 * eps + std::numbers::pi * eps * eps, 1e-10));
  }
}

TEST_CASE("lift of a finite union matches the circular-segment oracle") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto u = random_union(seed, 40);
    const auto lifted = mink::lift_tube(mink::exact_tube(u), 1e-12);
    for (double eps : {1e-4, 2e-3, 0.01, 0.05, 0.4}) {
      INFO("seed=" << seed << " eps=" << eps);
      CHECK_THAT(lifted(eps), WithinRel(oracle::tube_2d_of_segments(segments_of(u), eps), 1e-10));
    }
  }
}

TEST_CASE("double lift of point and segment gives ball and capsule volumes") {
  const double pi = std::numbers::pi;
  const auto point = mink::lift_tube(mink::lift_tube(mink::exact_tube(mink::make_points(std::vector<double>{0.0}))));
  const auto seg = mink::lift_tube(mink::lift_tube(mink::exact_tube(IntervalUnion::from_intervals({{0, 1}}))));
  CHECK(point.ambient_n() == 3);
  for (double eps : {0.01, 0.5, 2.0}) {
    CHECK_THAT(point(eps), WithinRel(4.0 * pi * eps * eps * eps / 3.0, 1e-9));
    CHECK_THAT(seg(eps), WithinRel(pi * eps * eps + 4.0 * pi * eps * eps * eps / 3.0, 1e-9));
  }
}

TEST_CASE("product with the unit interval matches the slice oracle") {
  const auto u = random_union(11, 25);
  const auto base = mink::exact_tube(u);
  const auto product = mink::product_with_unit_interval(base, 1e-12);
  CHECK(product.ambient_n() == 2);
  auto base_fn = [&](double r) { return r > 0.0 ? mink::tube_measure_1d(u, r) : u.total_length(); };
  for (double eps : {1e-3, 0.01, 0.1}) {
    INFO("eps=" << eps);
    CHECK_THAT(product(eps), WithinRel(oracle::product_with_unit_interval(base_fn, eps), 1e-9));
  }
}

TEST_CASE("lift refuses stochastic and raster tubes") {
  const mink::PointCloud cloud(2, {{0.0, 0.0}, {1.0, 0.5}});
  CHECK_THROWS_AS(mink::lift_tube(mink::mc_tube(cloud, 10000, 1)), mink::UnsupportedError);
  CHECK_THROWS_AS(mink::lift_tube(mink::grid_tube(cloud)), mink::UnsupportedError);
}

TEST_CASE("lifted tube carries its error model") {
  const auto lifted = mink::lift_tube(mink::exact_tube(IntervalUnion::from_intervals({{0, 1}})), 1e-9);
  CHECK(lifted.deterministic());
  CHECK(lifted.error_model().rel_bound >= 1e-9);
  const auto s = lifted.sample(0.1);
  CHECK(s.abs_error <= 1e-8 * s.value);
}

TEST_CASE("realize dispatches every spec kind") {
  const auto r = mink::realize(mink::SetSpec{mink::AStringSpec{1.0, 1000}});
  CHECK(r.ambient_n == 1);
  CHECK(r.generated == 1000);
  CHECK(r.set_1d.has_value());
  CHECK_THAT(r.truncation_eps, WithinRel(0.5e-3, 1e-12));

  const auto c = mink::realize(mink::SetSpec{mink::CantorSpec{20}});
  CHECK(!c.set_1d.has_value());
  CHECK(c.tube.resolution_floor() > 0.0);

  const mink::SetSpec seg{mink::IntervalsSpec{{{0.0, 1.0}}}};
  const auto p = mink::realize(mink::product_with_unit_interval_spec(seg));
  CHECK(p.ambient_n == 2);
  CHECK_THAT(p.tube(0.1), WithinRel(1.0 + 4.0 * 0.1 + std::numbers::pi * 0.01, 1e-9));
}
