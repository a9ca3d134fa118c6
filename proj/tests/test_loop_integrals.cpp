#include "doctest.h"

#include <cmath>
#include <random>
#include <string>

#include "dimkit/errors.hpp"
#include "dimkit/loop_integrals.hpp"

#include "test_util.hpp"

using namespace dimkit;
using testutil::kPi;
using testutil::rel_err;
using testutil::uniform;
using testutil::uniform_off_even;

namespace {

double component(const loop_integrals::LoopResult& r, const std::string& name) {
  for (const auto& [n, v] : r.components) {
    if (n == name) return v;
  }
  FAIL("missing component ", name);
  return 0.0;
}

double max_component(const loop_integrals::LoopResult& r) {
  double m = 0.0;
  for (const auto& [n, v] : r.components) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace

TEST_CASE("vacuum bubble reference values") {
  CHECK(std::fabs(loop_integrals::vacuum_bubble(1.0, 1.0).closed_form - 0.5) <=
        1e-12);
  CHECK(loop_integrals::vacuum_bubble(3.0, 1.0).closed_form ==
        doctest::Approx(-1.0 / (4.0 * kPi)).epsilon(1e-13));
  CHECK(loop_integrals::vacuum_bubble(0.5, 2.0).closed_form ==
        doctest::Approx(0.230110446958897745984).epsilon(1e-13));
  CHECK(loop_integrals::vacuum_bubble(-1.5, 1.0).closed_form ==
        doctest::Approx(6.13412267211409506481).epsilon(1e-13));
  CHECK(loop_integrals::vacuum_bubble(2.5, 1.0).closed_form ==
        doctest::Approx(-0.20717218991529996997).epsilon(1e-13));
}

TEST_CASE("vacuum bubble component product is an independent cross-check") {
  // The closed form is written straight from the reflection identity, not by
  // multiplying the components, so agreement is a real consistency test.
  std::mt19937_64 rng(0x10b1);
  for (int i = 0; i < 25; ++i) {
    const double d = uniform_off_even(rng, -5.0, 5.0, 0.05);
    const double m = uniform(rng, 0.3, 3.0);
    CAPTURE(d);
    const auto b = loop_integrals::vacuum_bubble(d, m);
    const double prod = component(b, "surface_measure") *
                        component(b, "radial_finite_part") *
                        component(b, "scale_power") *
                        component(b, "normalization");
    CHECK(rel_err(prod, b.closed_form) <= 1e-13);
  }
}

TEST_CASE("vacuum bubble pole lattice and argument validation") {
  CHECK_THROWS_AS(loop_integrals::vacuum_bubble(2.0, 1.0), PoleError);
  CHECK_THROWS_AS(loop_integrals::vacuum_bubble(0.0, 1.0), PoleError);
  CHECK_THROWS_AS(loop_integrals::vacuum_bubble(-4.0, 1.0), PoleError);
  CHECK_THROWS_AS(loop_integrals::vacuum_bubble(4.0 + 1e-10, 1.0), PoleError);
  CHECK_THROWS_AS(loop_integrals::vacuum_bubble(1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(loop_integrals::vacuum_bubble(1.0, -2.0),
                  std::invalid_argument);
}

TEST_CASE("vacuum bubble oracle in the convergent window") {
  std::mt19937_64 rng(0x10b2);
  for (int i = 0; i < 8; ++i) {
    const double d = uniform(rng, 0.2, 1.8);
    const double m = uniform(rng, 0.5, 2.0);
    CAPTURE(d);
    const auto b = loop_integrals::vacuum_bubble(d, m, true, 1e-10);
    REQUIRE(b.oracle.has_value());
    CHECK(*b.abs_diff <= 1e-8 * std::fabs(b.closed_form));
  }
}

TEST_CASE("vacuum bubble oracle via extraction outside the window") {
  const auto b = loop_integrals::vacuum_bubble(3.0, 1.0, true, 1e-10);
  REQUIRE(b.oracle.has_value());
  CHECK(*b.abs_diff <= *b.oracle_error);
  CHECK(*b.oracle_error <= 1e-3 * std::fabs(b.closed_form));
}

TEST_CASE("dot-product integral vanishes by parity with finite halves") {
  const auto at_minus_one = loop_integrals::dot_product_integral(-1.0, 1.0);
  CHECK(component(at_minus_one, "angular_term1") ==
        doctest::Approx(-kPi).epsilon(1e-12));
  CHECK(component(at_minus_one, "angular_term2") ==
        doctest::Approx(kPi).epsilon(1e-12));
  CHECK(std::fabs(at_minus_one.closed_form) <=
        1e-12 * max_component(at_minus_one));

  std::mt19937_64 rng(0x10b3);
  for (int i = 0; i < 20; ++i) {
    const double d = uniform_off_even(rng, -6.0, -0.05, 0.05);
    const double q = uniform(rng, 0.1, 5.0);
    CAPTURE(d);
    const auto r = loop_integrals::dot_product_integral(d, q);
    CHECK(std::fabs(r.closed_form) <= 1e-12 * max_component(r));
    CHECK(std::fabs(component(r, "angular_total")) <=
          1e-12 * std::fabs(component(r, "angular_term1")));
  }
}

TEST_CASE("dot-product integral oracle cancels to rounding") {
  const auto r = loop_integrals::dot_product_integral(-1.3, 2.0, true, 1e-11);
  REQUIRE(r.oracle.has_value());
  CHECK(std::fabs(*r.oracle) <= 1e-12 * max_component(r));
}

TEST_CASE("dot-product integral regime gate") {
  CHECK_THROWS_AS(loop_integrals::dot_product_integral(0.5, 1.0), RegimeError);
  CHECK_THROWS_AS(loop_integrals::dot_product_integral(2.5, 1.0), RegimeError);
  CHECK_THROWS_AS(loop_integrals::dot_product_integral(-2.0, 1.0),
                  RegimeError);
  CHECK_THROWS_AS(loop_integrals::dot_product_integral(1.0, 1.0), RegimeError);
}

TEST_CASE("external momentum integral reference values") {
  CHECK(loop_integrals::external_momentum_integral(-2.5, 1.0, 1.0).closed_form ==
        doctest::Approx(80.4201134568566343345).epsilon(1e-12));
  CHECK(loop_integrals::external_momentum_integral(-2.5, 2.0, 3.0).closed_form ==
        doctest::Approx(0.0955361608077704181557).epsilon(1e-12));
  CHECK(loop_integrals::external_momentum_integral(-3.5, 1.0, 1.0).closed_form ==
        doctest::Approx(-224.827338434209386275).epsilon(1e-12));
}

TEST_CASE("external momentum integral scales as stated") {
  const double d = -2.7;
  const auto base = loop_integrals::external_momentum_integral(d, 1.0, 1.0);
  const auto heavy = loop_integrals::external_momentum_integral(d, 1.0, 1.9);
  const auto fast = loop_integrals::external_momentum_integral(d, 3.1, 1.0);
  CHECK(rel_err(heavy.closed_form,
                std::pow(1.9, d - 3.0) * base.closed_form) <= 1e-12);
  CHECK(rel_err(fast.closed_form, base.closed_form / 3.1) <= 1e-12);
}

TEST_CASE("external momentum integral oracle") {
  std::mt19937_64 rng(0x10b4);
  int n = 0;
  while (n < 4) {
    const double d = uniform(rng, -4.0, -2.1);
    const double t = (d - 1.0) / 2.0;
    if (std::fabs(t - std::nearbyint(t)) < 0.05) continue;
    if (std::fabs(d - 2.0 * std::nearbyint(d / 2.0)) < 0.05) continue;
    ++n;
    CAPTURE(d);
    const auto g = loop_integrals::external_momentum_integral(
        d, uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0), true, 1e-10);
    REQUIRE(g.oracle.has_value());
    CHECK(*g.abs_diff <= 1e-8 * std::fabs(g.closed_form));
  }
}

TEST_CASE("external momentum integral domain gates") {
  CHECK_THROWS_AS(loop_integrals::external_momentum_integral(-1.5, 1.0, 1.0),
                  DivergenceError);
  CHECK_THROWS_AS(loop_integrals::external_momentum_integral(-2.0, 1.0, 1.0),
                  DivergenceError);
  // (d-1)/2 at a non-positive integer: d = -3.
  CHECK_THROWS_AS(loop_integrals::external_momentum_integral(-3.0, 1.0, 1.0),
                  PoleError);
  CHECK_THROWS_AS(loop_integrals::external_momentum_integral(-4.0, 1.0, 1.0),
                  RegimeError);
  CHECK_THROWS_AS(loop_integrals::external_momentum_integral(-2.5, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(loop_integrals::external_momentum_integral(-2.5, 1.0, -1.0),
                  std::invalid_argument);
}

TEST_CASE("the single-line display form differs by exactly -(d+1) m^2 / 2") {
  std::mt19937_64 rng(0x10b5);
  int n = 0;
  while (n < 10) {
    const double d = uniform(rng, -6.0, -2.1);
    const double t = (d - 1.0) / 2.0;
    if (std::fabs(t - std::nearbyint(t)) < 0.05) continue;
    if (std::fabs(d - 2.0 * std::nearbyint(d / 2.0)) < 0.05) continue;
    ++n;
    const double m = uniform(rng, 0.4, 2.5);
    const double k = uniform(rng, 0.4, 2.5);
    CAPTURE(d);
    const auto r = loop_integrals::external_momentum_integral(d, k, m);
    const double printed =
        loop_integrals::external_momentum_display_variant(d, k, m);
    CHECK(rel_err(printed / r.closed_form, -(d + 1.0) * m * m / 2.0) <=
          1e-12);
  }
}
