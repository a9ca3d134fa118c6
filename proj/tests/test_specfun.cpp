#include "doctest.h"

#include <cmath>
#include <random>

#include "dimkit/errors.hpp"
#include "dimkit/specfun.hpp"

#include "test_util.hpp"

using namespace dimkit;
using testutil::kPi;
using testutil::kSqrtPi;
using testutil::rel_err;
using testutil::uniform;

TEST_CASE("sinpi reduces the integer part exactly") {
  CHECK(specfun::sinpi(0.0) == 0.0);
  CHECK(specfun::sinpi(1.0) == 0.0);
  CHECK(specfun::sinpi(-7.0) == 0.0);
  CHECK(specfun::sinpi(1e6) == 0.0);
  CHECK(specfun::sinpi(0.5) == 1.0);
  CHECK(specfun::sinpi(-0.5) == -1.0);
  CHECK(specfun::sinpi(1.5) == -1.0);
  // Odd symmetry and period-2 symmetry at a generic point.
  CHECK(specfun::sinpi(-0.37) == doctest::Approx(-specfun::sinpi(0.37)));
  CHECK(specfun::sinpi(2.37) == doctest::Approx(specfun::sinpi(0.37)));
  // Large arguments keep full precision where std::sin(pi*x) has already
  // lost it to argument rounding.
  CHECK(specfun::sinpi(1e6 + 0.25) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("gamma matches reference values") {
  CHECK(specfun::gamma(0.25) ==
        doctest::Approx(3.62560990822190831193).epsilon(1e-14));
  CHECK(specfun::gamma(0.5) == doctest::Approx(kSqrtPi).epsilon(1e-14));
  CHECK(specfun::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(specfun::gamma(2.5) ==
        doctest::Approx(1.32934038817913702047).epsilon(1e-14));
  CHECK(specfun::gamma(6.0) == doctest::Approx(120.0).epsilon(1e-14));
  CHECK(specfun::gamma(-0.5) ==
        doctest::Approx(-3.5449077018110320546).epsilon(1e-14));
  CHECK(specfun::gamma(-2.5) ==
        doctest::Approx(-0.945308720482941881226).epsilon(1e-14));
}

TEST_CASE("rgamma vanishes exactly at non-positive integers") {
  for (int k = 0; k <= 40; ++k) {
    CAPTURE(k);
    CHECK(specfun::rgamma(-static_cast<double>(k)) == 0.0);
  }
  CHECK(specfun::rgamma(-0.5) ==
        doctest::Approx(-0.282094791773878143474).epsilon(1e-14));
  CHECK(specfun::rgamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // A hair away from the pole the reciprocal is tiny but nonzero.
  CHECK(specfun::rgamma(-3.0 + 1e-12) != 0.0);
}

TEST_CASE("gamma and lgamma_signed refuse the pole lattice") {
  CHECK_THROWS_AS(specfun::gamma(0.0), PoleError);
  CHECK_THROWS_AS(specfun::gamma(-1.0), PoleError);
  CHECK_THROWS_AS(specfun::gamma(-42.0), PoleError);
  int sign = 0;
  CHECK_THROWS_AS(specfun::lgamma_signed(0.0, sign), PoleError);
  CHECK_THROWS_AS(specfun::lgamma_signed(-6.0, sign), PoleError);
}

TEST_CASE("lgamma_signed agrees with libm on magnitude and sign") {
  std::mt19937_64 rng(0x5f01);
  for (int i = 0; i < 200; ++i) {
    double x = uniform(rng, -20.0, 20.0);
    if (std::fabs(x - std::nearbyint(x)) < 1e-3 && x < 0.5) continue;
    CAPTURE(x);
    int sign = 0;
    const double lg = specfun::lgamma_signed(x, sign);
    CHECK(std::fabs(lg - std::lgamma(x)) <=
          1e-12 * std::max(1.0, std::fabs(lg)));
    const double ref_sign =
        x > 0.0 ? 1.0 : std::copysign(1.0, specfun::sinpi(x));
    CHECK(static_cast<double>(sign) == ref_sign);
  }
}

TEST_CASE("gamma stays finite through the old premature-overflow window") {
  // exp(lgamma) takes over where the direct kernel would overflow early;
  // values up to ~171.6 must remain finite and consistent with recurrence.
  const double g150 = specfun::gamma(150.0);
  CHECK(std::isfinite(g150));
  CHECK(rel_err(specfun::gamma(151.0), 150.0 * g150) <= 1e-12);
  CHECK(std::isfinite(specfun::gamma(171.0)));
  CHECK(specfun::rgamma(150.0) > 0.0);
}

TEST_CASE("reflection battery stays at the double-precision floor") {
  std::mt19937_64 rng(0x5f02);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double x = uniform(rng, 0.01, 0.99);
    const double lhs =
        specfun::gamma(x) * specfun::gamma(1.0 - x) * specfun::sinpi(x) / kPi;
    worst = std::max(worst, std::fabs(lhs - 1.0));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("duplication battery including negative arguments") {
  std::mt19937_64 rng(0x5f03);
  double worst = 0.0;
  int n = 0;
  while (n < 500) {
    const double x = uniform(rng, -6.0, 12.0);
    const auto clear = [](double v) {
      return std::fabs(v - std::nearbyint(v)) > 0.05 || v > 0.5;
    };
    if (!clear(x) || !clear(x + 0.5) || !clear(2.0 * x)) continue;
    ++n;
    const double lhs = specfun::gamma(x) * specfun::gamma(x + 0.5) *
                       std::pow(2.0, 2.0 * x - 1.0) / kSqrtPi;
    worst = std::max(worst, rel_err(lhs, specfun::gamma(2.0 * x)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("reciprocal gamma of a negative argument via the beta route") {
  // 1/Gamma(-z) rewritten through the duplication formula as
  // -(2^(-2z) sin(pi z)/pi) * Gamma(2z+1)/Gamma(z) * B(1/2, z).
  std::mt19937_64 rng(0x5f04);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double z = uniform(rng, 0.05, 30.0);
    const double rhs = -std::pow(2.0, -2.0 * z) * specfun::sinpi(z) / kPi *
                       specfun::gamma(2.0 * z + 1.0) / specfun::gamma(z) *
                       specfun::beta(0.5, z);
    worst = std::max(worst, rel_err(specfun::rgamma(-z), rhs));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("beta values and poles") {
  CHECK(specfun::beta(0.25, 0.5) ==
        doctest::Approx(5.24411510858423962093).epsilon(1e-13));
  CHECK(specfun::beta(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(specfun::beta(2.0, 3.0) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  // Symmetry.
  CHECK(specfun::beta(0.7, 2.2) ==
        doctest::Approx(specfun::beta(2.2, 0.7)).epsilon(1e-14));
  CHECK_THROWS_AS(specfun::beta(-1.0, 0.5), PoleError);
  CHECK_THROWS_AS(specfun::beta(0.5, 0.0), PoleError);
}
