#include "mink/gamma.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mink/errors.hpp"
#include "mink/quadrature.hpp"

namespace mink {

namespace {

void require_exponent(int ambient_n, double s, const char* who) {
  if (ambient_n < 1) {
    throw DomainError(std::string(who) + ": ambient dimension must be >= 1");
  }
  if (!(s >= 0.0 && s <= ambient_n)) {
    throw DomainError(std::string(who) + ": exponent s=" + std::to_string(s) +
                      " outside [0, " + std::to_string(ambient_n) + "]");
  }
}

}  // namespace

// glibc's tgamma is correctly rounded to a few ulp on the positive axis,
// well inside the 1e-13 relative budget the estimators need.
double gamma_fn(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("gamma_fn: argument must be finite and positive, got " +
                      std::to_string(x));
  }
  const double value = std::tgamma(x);
  if (!std::isfinite(value)) {
    throw DomainError("gamma_fn: overflow at x=" + std::to_string(x));
  }
  return value;
}

double gamma_ball(double k) {
  if (!std::isfinite(k) || k < 0.0) {
    throw DomainError("gamma_ball: k must be finite and >= 0, got " + std::to_string(k));
  }
  const double half = 0.5 * k;
  if (half + 1.0 < 170.0) {
    return std::pow(std::numbers::pi, half) / gamma_fn(half + 1.0);
  }
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
}

GammaRatio gamma_ratio(int ambient_n, double s) {
  require_exponent(ambient_n, s, "gamma_ratio");
  const double codim = ambient_n - s;
  return {ambient_n, s, gamma_ball(codim + 1.0) / gamma_ball(codim)};
}

double power_lift_integral(int ambient_n, double s, double eps, double tol) {
  require_exponent(ambient_n, s, "power_lift_integral");
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("power_lift_integral: eps must be positive and finite");
  }
  if (!(tol > 0.0)) throw DomainError("power_lift_integral: tol must be positive");
  const double codim = ambient_n - s;
  // y = eps sin t, dy = eps cos t dt; the radius sqrt(eps^2 - y^2) becomes eps cos t.
  auto integrand = [eps, codim](double t) {
    const double radius = eps * std::cos(t);
    return 2.0 * std::pow(radius, codim) * eps * std::cos(t);
  };
  QuadratureOptions opts;
  opts.abs_tol = tol;
  return integrate_adaptive(integrand, 0.0, 0.5 * std::numbers::pi, opts).value;
}

}  // namespace mink
