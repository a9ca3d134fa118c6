#include "dimkit/angular.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dimkit/errors.hpp"
#include "dimkit/specfun.hpp"

namespace dimkit::angular {

namespace {
constexpr double kLn2 = std::numbers::ln2;
constexpr double kLnPi = 1.1447298858494001741;  // log(pi)
}  // namespace

double beta_kernel(double alpha, double beta_exp) {
  detail::require_finite(alpha, "alpha");
  detail::require_finite(beta_exp, "beta_exp");
  if (alpha <= -1.0) {
    throw DivergenceError("beta kernel diverges at z = 1: exponent alpha = " +
                          std::to_string(alpha) + " is <= -1");
  }
  if (beta_exp <= -1.0) {
    throw DivergenceError("beta kernel diverges at z = -1: exponent beta = " +
                          std::to_string(beta_exp) + " is <= -1");
  }
  // Both beta() arguments are positive here, so the only sign is +1 and the
  // log-space assembly below is safe for large exponents.
  int sa = 0, sb = 0, sc = 0;
  const double log_val = (alpha + beta_exp + 1.0) * kLn2 +
                         specfun::lgamma_signed(alpha + 1.0, sa) +
                         specfun::lgamma_signed(beta_exp + 1.0, sb) -
                         specfun::lgamma_signed(alpha + beta_exp + 2.0, sc);
  return std::exp(log_val);
}

double sin_power(double a) {
  detail::require_finite(a, "a");
  if (a <= -1.0) {
    throw DivergenceError("sin^a is not integrable over [0, pi] for a = " +
                          std::to_string(a) + " <= -1");
  }
  const double half = (a - 1.0) / 2.0;
  return beta_kernel(half, half);
}

SinPowerCosParts sin_power_cos(double d) {
  detail::require_finite(d, "d");
  if (d >= 0.0) {
    throw DivergenceError(
        "the cosine-weighted split of sin^(-d-1) requires d < 0; each half "
        "diverges at an endpoint for d = " +
        std::to_string(d));
  }
  // All gamma arguments below (-d/2, 1-d/2, 1-d, -d) are positive, so every
  // factor is positive and the signs are carried explicitly.
  int s = 0;
  const double lg_half = specfun::lgamma_signed(-d / 2.0, s);       // Gamma(-d/2)
  const double lg_half1 = specfun::lgamma_signed(1.0 - d / 2.0, s); // Gamma(1-d/2)
  const double lg_1md = specfun::lgamma_signed(1.0 - d, s);         // Gamma(1-d)
  const double lg_md = specfun::lgamma_signed(-d, s);               // Gamma(-d)

  SinPowerCosParts out;
  out.term1 = -std::exp(-d * kLn2 + lg_half + lg_half1 - lg_1md);
  out.term2 = std::exp((-d - 1.0) * kLn2 + 2.0 * lg_half - lg_md);
  out.total = out.term1 + out.term2;
  return out;
}

double sin_power_over_one_minus_cos(double d) {
  detail::require_finite(d, "d");
  if (d >= -2.0) {
    throw DivergenceError(
        "sin^(-d-1)/(1-cos) behaves like theta^(-d-3) near 0 and is only "
        "integrable for d < -2; got d = " +
        std::to_string(d));
  }
  return beta_kernel(-d / 2.0 - 1.0, -d / 2.0 - 2.0);
}

double sin_power_over_one_minus_cos_reduced(double d) {
  detail::require_finite(d, "d");
  if (d >= -2.0) {
    throw DivergenceError(
        "sin^(-d-1)/(1-cos) is only integrable for d < -2; got d = " +
        std::to_string(d));
  }
  int s = 0;
  const double lg_num = specfun::lgamma_signed(-d / 2.0 - 1.0, s);
  const double lg_den = specfun::lgamma_signed(-(d + 1.0) / 2.0, s);
  return std::exp(0.5 * kLnPi + lg_num - lg_den);
}

}  // namespace dimkit::angular
