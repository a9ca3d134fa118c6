#pragma once

#include <vector>

// Finite parts of cutoff-regularized radial integrals. The integrals run in
// the squared, scale-normalized variable y = (r/scale)^2 from (delta/scale)^2
// to (K/scale)^2; as the lower cutoff delta -> 0 and the upper cutoff K ->
// infinity the value splits into pure powers of the cutoffs plus a constant.
// That constant is the finite part. Three routes to it live here:
//
//   extract_finite_part     fit the cutoff powers on a grid of (delta, K)
//                           pairs and read off the constant (numerical,
//                           knows nothing about gamma functions)
//   finite_part_reference   peel the cutoff powers analytically term by term
//                           and integrate the remainder (quadrature-exact,
//                           still gamma-free; the preferred oracle)
//   closed_form_finite_part the reflection/gamma closed forms

namespace dimkit::radial {

enum class RadialIntegrandKind {
  kPurePower,        // y^a : finite part is identically 0
  kPowerOverOnePlus, // y^a / (1 + y) : finite part pi / sin(pi (a+1))
  kPowerExp,         // y^a exp(-y)   : finite part Gamma(a+1)
};

struct RadialIntegrandSpec {
  RadialIntegrandKind kind = RadialIntegrandKind::kPowerOverOnePlus;
  double exponent = 0.0;  // a, the power of y
  double scale = 1.0;     // mass-like unit the cutoff grids are measured in
};

/// One cutoff power stripped by the fit.
struct StrippedTerm {
  enum class Side { kLower, kUpper };
  Side side = Side::kLower;
  double exponent = 0.0;     // power of (delta/scale)^2 resp. (K/scale)^2
  double coefficient = 0.0;  // fitted coefficient
};

struct ExtractionResult {
  double finite_part = 0.0;
  std::vector<StrippedTerm> stripped_terms;
  // Absolute uncertainty on finite_part: fit covariance plus propagated
  // quadrature error plus the estimated bias of the truncated power basis.
  // Honest rather than optimistic; steep integrands legitimately produce
  // large values here.
  double error_estimate = 0.0;
};

struct ExtractionOptions {
  // Keep cutoff powers p with p <= exponent_window on the lower side and
  // p >= -exponent_window on the upper side; beyond that they are smaller
  // than the quadrature noise on sane grids.
  double exponent_window = 2.0;
  double quadrature_rel_tol = 1e-11;
  // Reject fits whose column-equilibrated design matrix has a worse
  // condition number than this.
  double condition_limit = 1e12;
};

/// {0.5, 1, 2, 4, 8} * 1e-3 * scale.
std::vector<double> default_delta_grid(double scale);
/// {1, 2, 4, 8, 16} * 1e3 * scale.
std::vector<double> default_K_grid(double scale);

/// Fit route. Integrates the spec'd integrand over every (delta_i, K_j) pair,
/// least-squares fits constant + cutoff powers, and returns the constant.
/// Throws std::invalid_argument for malformed grids (non-increasing, not
/// clear of the crossover region delta < 0.3 scale < 3 scale < K),
/// NoFinitePartError when a cutoff power collides with the constant (the
/// logarithmic case), ConditioningError when the grid cannot resolve the
/// basis.
ExtractionResult extract_finite_part(const RadialIntegrandSpec& spec,
                                     const std::vector<double>& delta_grid,
                                     const std::vector<double>& K_grid,
                                     const ExtractionOptions& options);
ExtractionResult extract_finite_part(const RadialIntegrandSpec& spec,
                                     const std::vector<double>& delta_grid,
                                     const std::vector<double>& K_grid);

/// Analytic peel route: subtract the exact series of the integrand around
/// y = 0 (and around y = infinity for the algebraic kernel) until the
/// remainder converges, integrate the remainder numerically, and keep the
/// boundary-free terms. Agrees with the closed forms to quadrature accuracy
/// while sharing no special-function code with them. Throws PoleError at the
/// closed form's pole set (see closed_form_finite_part) and
/// NoFinitePartError for the logarithmic pure-power case.
double finite_part_reference(const RadialIntegrandSpec& spec,
                             double rel_tol = 1e-13);

/// pi / sin(pi(a+1)) for the algebraic kernel (PoleError within 1e-9 of
/// integer a+1), Gamma(a+1) for the exponential kernel (PoleError within
/// 1e-9 of a+1 = 0, -1, -2, ...). Pure powers have no closed-form constant
/// to report, so kPurePower throws std::invalid_argument.
double closed_form_finite_part(const RadialIntegrandSpec& spec);

}  // namespace dimkit::radial
