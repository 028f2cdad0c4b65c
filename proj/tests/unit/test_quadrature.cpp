#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "mink/errors.hpp"
#include "mink/quadrature.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("integrates smooth functions to tolerance") {
  const mink::QuadratureOptions opts{1e-13, 1e-13};
  auto r = mink::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, opts);
  CHECK_THAT(r.value, WithinAbs(2.0, 1e-12));
  r = mink::integrate_adaptive([](double x) { return std::exp(-x * x); }, -6.0, 6.0, opts);
  CHECK_THAT(r.value, WithinAbs(std::sqrt(std::numbers::pi), 1e-12));
}

TEST_CASE("handles endpoint square-root behaviour") {
  const mink::QuadratureOptions opts{1e-12, 1e-12};
  auto r = mink::integrate_adaptive([](double x) { return std::sqrt(1.0 - x * x); }, -1.0, 1.0, opts);
  CHECK_THAT(r.value, WithinAbs(std::numbers::pi / 2.0, 1e-11));
  CHECK(r.abs_error <= 1e-10);
}

TEST_CASE("reports a kink-free polynomial with one panel") {
  auto r = mink::integrate_adaptive([](double x) { return x * x * x - x; }, 0.0, 2.0, {1e-14, 0.0});
  CHECK(r.panels == 1);
  CHECK_THAT(r.value, WithinAbs(2.0, 1e-14));
}

TEST_CASE("throws when the panel budget is exhausted") {
  mink::QuadratureOptions opts{1e-15, 0.0, 8};
  CHECK_THROWS_AS(mink::integrate_adaptive([](double x) { return std::abs(std::sin(50.0 * x)); },
                                           0.0, 10.0, opts),
                  mink::ConvergenceError);
}
