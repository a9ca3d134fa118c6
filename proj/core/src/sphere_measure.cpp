#include "dimkit/sphere_measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dimkit/errors.hpp"
#include "dimkit/specfun.hpp"

namespace dimkit::sphere_measure {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kLnPi = 1.1447298858494001741;
constexpr double kPoleGuard = 1e-9;

// Beyond this the direct pow(pi, d/2) * rgamma(d/2) product pairs an
// overflowing factor with an underflowing one; switch to log space.
constexpr double kDirectRange = 280.0;

[[noreturn]] void throw_regime_error(double d, DimensionRegime regime,
                                     const char* what) {
  throw RegimeError(std::string(what) + " is not defined at d = " +
                    std::to_string(d) + " (" + regime_name(regime) + ")");
}

// Coefficient of the positive-regular single-angle rule, also the seed of the
// critical-regime chain below.
double positive_coefficient(double d) {
  return 2.0 * std::pow(kPi, (d - 1.0) / 2.0) * specfun::rgamma((d - 1.0) / 2.0);
}

double critical_coefficient(double d) {
  // 2^(d-1) pi^(d/2-1) sin(pi(2-d)/2) Gamma(3-d) / Gamma(2-d/2); every gamma
  // argument lies in (1.5, 3) for 0 < d < 1, so direct evaluation is safe.
  return std::pow(2.0, d - 1.0) * std::pow(kPi, d / 2.0 - 1.0) *
         specfun::sinpi((2.0 - d) / 2.0) * specfun::gamma(3.0 - d) *
         specfun::rgamma(2.0 - d / 2.0);
}

// Shared log-space core of the negative-regime coefficient family:
// 2^(1+d) sin(pi d/2) pi^(pi_exponent) Gamma(1-d) / Gamma(gamma_arg),
// with gamma_arg > 0 so only the sine contributes a sign.
double negative_family(double d, double pi_exponent, double gamma_arg) {
  const double s = specfun::sinpi(d / 2.0);
  int sg = 0;
  const double log_mag = (1.0 + d) * kLn2 + std::log(std::fabs(s)) +
                         pi_exponent * kLnPi +
                         specfun::lgamma_signed(1.0 - d, sg) -
                         specfun::lgamma_signed(gamma_arg, sg);
  return std::copysign(std::exp(log_mag), s);
}

double negative_coefficient(double d) {
  return negative_family(d, d / 2.0 - 1.0, -d / 2.0);
}

}  // namespace

DimensionRegime classify(double d) {
  detail::require_finite(d, "d");
  if (d < 0.5) {
    const double nearest_even = std::nearbyint(d / 2.0) * 2.0;
    if (nearest_even <= 0.0 && std::fabs(d - nearest_even) < kPoleGuard) {
      return DimensionRegime::kZeroOrNegativeEvenPole;
    }
  }
  if (d < 0.0) return DimensionRegime::kNegative;
  if (d == 1.0) return DimensionRegime::kOneDimensional;
  if (d > 1.0) return DimensionRegime::kPositiveRegular;
  return DimensionRegime::kCritical;
}

const char* regime_name(DimensionRegime regime) {
  switch (regime) {
    case DimensionRegime::kPositiveRegular: return "positive regular, d > 1";
    case DimensionRegime::kOneDimensional: return "one-dimensional, d = 1";
    case DimensionRegime::kCritical: return "critical strip, 0 < d < 1";
    case DimensionRegime::kZeroOrNegativeEvenPole:
      return "pole lattice, d near 0, -2, -4, ...";
    case DimensionRegime::kNegative: return "negative, d < 0 off the poles";
  }
  return "unknown";
}

double surface(double d) {
  detail::require_finite(d, "d");
  // Exact zeros exist only on the even non-positive lattice; an rgamma that
  // merely underflowed must fall through to the log-space path instead.
  if (d <= 0.0 && specfun::sinpi(d / 2.0) == 0.0) return 0.0;
  if (std::fabs(d) <= kDirectRange) {
    return 2.0 * std::pow(kPi, d / 2.0) * specfun::rgamma(d / 2.0);
  }
  int sg = 0;
  const double lg = specfun::lgamma_signed(d / 2.0, sg);
  const double log_mag = kLn2 + (d / 2.0) * kLnPi - lg;
  return sg * std::exp(log_mag);
}

double omega(double d) { return surface(d); }

double volume(double d) {
  detail::require_finite(d, "d");
  if (std::fabs(d) <= kPoleGuard) {
    throw PoleError("volume is 0/0 at d = 0 (the limit from above is 1); got d = " +
                    std::to_string(d));
  }
  return surface(d) / d;
}

double measure_coefficient(double d) {
  switch (classify(d)) {
    case DimensionRegime::kPositiveRegular:
      return positive_coefficient(d);
    case DimensionRegime::kCritical:
      return critical_coefficient(d);
    case DimensionRegime::kNegative:
      return negative_coefficient(d);
    case DimensionRegime::kOneDimensional:
    case DimensionRegime::kZeroOrNegativeEvenPole:
      throw_regime_error(d, classify(d), "the single-angle measure coefficient");
  }
  throw Error("unreachable regime");
}

double measure_coefficient_variant(double d) {
  if (classify(d) != DimensionRegime::kCritical) return measure_coefficient(d);
  return std::pow(4.0 * kPi, (d - 1.0) / 2.0) * specfun::sinpi((2.0 - d) / 2.0) *
         specfun::gamma(3.0 - d) * specfun::rgamma(2.0 - d / 2.0);
}

double sine_exponent(double d) {
  switch (classify(d)) {
    case DimensionRegime::kPositiveRegular: return d - 2.0;
    case DimensionRegime::kCritical: return 1.0 - d;
    case DimensionRegime::kNegative: return -d - 1.0;
    case DimensionRegime::kOneDimensional:
    case DimensionRegime::kZeroOrNegativeEvenPole:
      throw_regime_error(d, classify(d), "the sine exponent");
  }
  throw Error("unreachable regime");
}

int max_angles(double d) {
  switch (classify(d)) {
    case DimensionRegime::kPositiveRegular: {
      const double fl = std::floor(d);
      return (d == fl) ? static_cast<int>(fl) - 1 : static_cast<int>(fl);
    }
    case DimensionRegime::kCritical:
      // The chain maps the strip to 2 < 3-d < 3 where three angles fit.
      return 3;
    case DimensionRegime::kNegative:
      return static_cast<int>(std::floor(-d)) + 1;
    case DimensionRegime::kOneDimensional:
    case DimensionRegime::kZeroOrNegativeEvenPole:
      throw_regime_error(d, classify(d), "an angular decomposition");
  }
  throw Error("unreachable regime");
}

MeasureDecomposition decompose(double d, int n_angles) {
  const int mx = max_angles(d);
  if (n_angles < 1 || n_angles > mx) {
    throw std::invalid_argument("n_angles = " + std::to_string(n_angles) +
                                " out of range; d = " + std::to_string(d) +
                                " admits 1.." + std::to_string(mx) + " angles");
  }

  MeasureDecomposition out;
  out.source_dimension = d;
  out.radial_exponent = d - 1.0;
  out.angular_factors.reserve(static_cast<unsigned>(n_angles));
  const double n = static_cast<double>(n_angles);

  switch (classify(d)) {
    case DimensionRegime::kPositiveRegular: {
      // Peeling one angle lowers the dimension by one, so the prefactor is
      // the surface measure of what is left.
      out.prefactor =
          2.0 * std::pow(kPi, (d - n) / 2.0) * specfun::rgamma((d - n) / 2.0);
      for (int i = 1; i <= n_angles; ++i) {
        out.angular_factors.push_back({i, d - i - 1.0});
      }
      out.residual_dimension = d - n;
      break;
    }
    case DimensionRegime::kCritical: {
      // The critical rule is the positive rule of the mirror dimension
      // D = 3-d, rescaled so the n = 1 case reproduces the critical
      // coefficient.
      const double mirror = 3.0 - d;
      const double ratio = critical_coefficient(d) / positive_coefficient(mirror);
      out.prefactor = ratio * 2.0 * std::pow(kPi, (mirror - n) / 2.0) *
                      specfun::rgamma((mirror - n) / 2.0);
      for (int i = 1; i <= n_angles; ++i) {
        out.angular_factors.push_back({i, 2.0 - d - i});
      }
      out.residual_dimension = mirror - n;
      break;
    }
    case DimensionRegime::kNegative: {
      out.prefactor =
          negative_family(d, (d - n + 1.0) / 2.0 - 1.0, -(d + n - 1.0) / 2.0);
      for (int i = 1; i <= n_angles; ++i) {
        out.angular_factors.push_back({i, -d - static_cast<double>(i)});
      }
      out.residual_dimension = 1.0 - d - n;
      break;
    }
    case DimensionRegime::kOneDimensional:
    case DimensionRegime::kZeroOrNegativeEvenPole:
      throw_regime_error(d, classify(d), "an angular decomposition");
  }
  return out;
}

}  // namespace dimkit::sphere_measure
