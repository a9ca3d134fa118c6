#pragma once

#include <vector>

// Surface and volume measures of the unit sphere as analytic functions of a
// real dimension d, together with the coefficient and multi-angle
// decompositions of the measure that hold in each dimension regime.

namespace dimkit::sphere_measure {

enum class DimensionRegime {
  kPositiveRegular,        // d > 1
  kOneDimensional,         // d == 1 exactly: two discrete points, no angle
  kCritical,               // 0 < d < 1
  kZeroOrNegativeEvenPole, // within 1e-9 of d = 0, -2, -4, ...
  kNegative,               // d < 0 away from the even lattice
};

DimensionRegime classify(double d);
const char* regime_name(DimensionRegime regime);

/// Total surface measure: 2 pi^(d/2) / Gamma(d/2). Evaluates to exactly 0 at
/// d = 0, -2, -4, ... where the reciprocal gamma has its zeros.
double surface(double d);

/// Alias for surface(); the conventional name for the full solid angle.
double omega(double d);

/// Enclosed volume surface(d)/d. Throws PoleError within 1e-9 of d = 0,
/// where the ratio is 0/0 (its one-sided limit from above is 1). At the
/// negative even zeros the value is an honest 0.
double volume(double d);

/// Coefficient C(d) in the single-angle reduction
///   d(measure) = C(d) sin^(e(d))(theta) dtheta r^(d-1) dr,
/// valid separately in each regime:
///   d > 1:      C = 2 pi^((d-1)/2) / Gamma((d-1)/2),      e = d - 2
///   0 < d < 1:  C = 2^(d-1) pi^(d/2-1) sin(pi(2-d)/2)
///                   Gamma(3-d) / Gamma(2-d/2),            e = 1 - d
///   d < 0:      C = 2^(1+d) sin(pi d/2) pi^(d/2-1)
///                   Gamma(1-d) / Gamma(-d/2),             e = -d - 1
/// Throws RegimeError at d = 1 and near the even non-positive poles.
double measure_coefficient(double d);

/// Variant closed form of the critical-regime coefficient with a
/// (4 pi)^((d-1)/2) prefactor that appears in some derivations. It exceeds
/// measure_coefficient by a constant factor sqrt(pi) on all of 0 < d < 1 and
/// does not close the measure; exposed so the CLI can display the mismatch.
/// Outside the critical regime it falls back to measure_coefficient.
double measure_coefficient_variant(double d);

/// Exponent e(d) of the sine weight in the single-angle reduction above.
double sine_exponent(double d);

/// Largest number of angles the measure can be peeled into in d's regime:
/// floor(d) for non-integer d > 1, d-1 for integer d > 1, 3 in the critical
/// strip, floor(|d|)+1 for negative d. Throws RegimeError at d = 1 and near
/// the poles.
int max_angles(double d);

/// One peeled angle: integration range is [0, pi) and the weight is
/// sin^(sine_exponent)(theta_i).
struct AngularFactor {
  int angle_index = 0;  // 1-based
  double sine_exponent = 0.0;
};

struct MeasureDecomposition {
  double prefactor = 0.0;
  std::vector<AngularFactor> angular_factors;
  double radial_exponent = 0.0;     // always d - 1
  double residual_dimension = 0.0;  // dimension left after peeling
  double source_dimension = 0.0;    // the d that was decomposed
};

/// Peel n_angles explicit angles off the measure in dimension d. For every
/// valid n_angles the decomposition closes:
///   prefactor * prod_i sin_power(angular_factors[i].sine_exponent)
///     == surface(d),
/// which is what the test suite checks. Throws RegimeError like
/// measure_coefficient, std::invalid_argument if n_angles is out of range.
MeasureDecomposition decompose(double d, int n_angles);

}  // namespace dimkit::sphere_measure
