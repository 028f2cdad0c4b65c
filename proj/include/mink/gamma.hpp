#pragma once

// Gamma-function helpers and the unit-ball constants used to normalize
// Minkowski contents.

namespace mink {

/// Gamma function for finite x > 0; throws DomainError otherwise or on overflow.
double gamma_fn(double x);

/// Volume constant pi^(k/2) / Gamma(k/2 + 1). For integer k this is the
/// volume of the unit ball in R^k; defined for every real k >= 0.
double gamma_ball(double k);

/// Ratio between the normalizing constants of R^(N+1) and R^N at exponent s.
struct GammaRatio {
  int ambient_n = 1;
  double s = 0.0;
  double value = 0.0;  // gamma_ball(N + 1 - s) / gamma_ball(N - s)
};

GammaRatio gamma_ratio(int ambient_n, double s);

/// Numerically evaluates 2 * int_0^eps (sqrt(eps^2 - y^2))^(N - s) dy after
/// substituting y = eps sin t, to absolute error <= tol. The closed form is
/// gamma_ratio(N, s).value * eps^(N + 1 - s); this routine never uses it.
double power_lift_integral(int ambient_n, double s, double eps, double tol);

}  // namespace mink
