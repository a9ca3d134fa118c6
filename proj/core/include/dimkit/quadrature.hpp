#pragma once

#include <functional>

// Double-exponential quadrature: tanh-sinh on finite intervals, exp-sinh on
// half-lines. Chosen over Gauss-Jacobi style rules because one engine covers
// every endpoint power singularity with exponent > -1 without per-integrand
// weight bookkeeping.
//
// Endpoint singularities and machine precision: node positions cluster
// double-exponentially close to the endpoints, far below the spacing of
// representable doubles near a non-zero endpoint. The engine therefore
// computes the distances to both endpoints in the transformed variable,
// where they are exact down to ~1e-300, and offers an integrand form that
// receives them. Integrands singular at an endpoint should be written in
// terms of these distances (e.g. sin(theta) as sin(min(dist_a, dist_b)) on
// [0, pi]). The plain f(x) form is also provided; it skips nodes whose
// abscissa is no longer distinguishable from the endpoint, which caps the
// attainable accuracy for strong singularities at non-zero endpoints.

namespace dimkit::quadrature {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  long long evaluations = 0;
  // False when the level cap was reached before the tolerance; value and
  // error_estimate still hold the best available estimates.
  bool converged = false;
};

using Integrand = std::function<double(double)>;
// f(x, dist_a, dist_b) with dist_a = x - a and dist_b = b - x computed
// without cancellation.
using EndpointAwareIntegrand = std::function<double(double, double, double)>;

/// Integrate f over [a, b] to the requested relative tolerance.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  double rel_tol);

/// Endpoint-distance-aware variant; required for full accuracy when f is
/// singular at an endpoint that is not exactly representable around 0.
QuadratureResult integrate_finite(const EndpointAwareIntegrand& f, double a,
                                  double b, double rel_tol);

/// Integrate f over [a, infinity) to the requested relative tolerance.
/// Supports power singularities at a (for a = 0) and power or exponential
/// decay at infinity.
QuadratureResult integrate_semi_infinite(const Integrand& f, double a,
                                         double rel_tol);

}  // namespace dimkit::quadrature
