#pragma once

// Closed-form angular integrals over [0, pi). Everything reduces through one
// beta-kernel primitive so a single quadrature-validated path backs all of
// them.

namespace dimkit::angular {

/// Integral of (1-z)^alpha (1+z)^beta_exp over [-1, 1], which equals
/// 2^(alpha+beta_exp+1) B(alpha+1, beta_exp+1).
/// Throws DivergenceError unless alpha > -1 and beta_exp > -1.
double beta_kernel(double alpha, double beta_exp);

/// Integral of sin^a(theta) over [0, pi], a > -1.
double sin_power(double a);

/// The two closed-form halves of the integral of sin^(-d-1)(theta)cos(theta)
/// over [0, pi] for d < 0, plus their sum. The sum vanishes identically:
/// cos is odd about pi/2 while the sine power is even, and the gamma
/// expressions cancel exactly through the recurrence Gamma(1-d) = -d Gamma(-d).
/// Both terms are exposed because downstream momentum integrals are stated
/// in terms of them.
struct SinPowerCosParts {
  double term1 = 0.0;  // -2^(-d) Gamma(-d/2) Gamma(1-d/2) / Gamma(1-d)
  double term2 = 0.0;  // +2^(-d-1) Gamma(-d/2)^2 / Gamma(-d)
  double total = 0.0;
};
SinPowerCosParts sin_power_cos(double d);

/// Integral of sin^(-d-1)(theta) / (1 - cos(theta)) over [0, pi] for d < -2
/// (the integrand grows like theta^(-d-3) near 0). Evaluated through
/// beta_kernel(-d/2-1, -d/2-2).
double sin_power_over_one_minus_cos(double d);

/// The same integral pushed through the Legendre duplication formula:
/// sqrt(pi) Gamma(-d/2-1) / Gamma(-(d+1)/2). Kept as an independent
/// reduction route; must agree with the beta-kernel form to rounding.
double sin_power_over_one_minus_cos_reduced(double d);

}  // namespace dimkit::angular
