#include "verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "dimkit/angular.hpp"
#include "dimkit/errors.hpp"
#include "dimkit/loop_integrals.hpp"
#include "dimkit/quadrature.hpp"
#include "dimkit/radial.hpp"
#include "dimkit/specfun.hpp"
#include "dimkit/sphere_measure.hpp"

namespace dimkit_cli {

namespace {

using namespace dimkit;

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

// Uniform draw from the raw 53-bit mantissa so sequences are identical across
// standard libraries (std::uniform_real_distribution is not portable).
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1p-53);
}

// Draw until the value stays `margin` away from the even-integer lattice.
double uniform_off_even(std::mt19937_64& rng, double lo, double hi,
                        double margin) {
  for (;;) {
    const double d = uniform(rng, lo, hi);
    if (std::fabs(d - 2.0 * std::nearbyint(d / 2.0)) > margin) return d;
  }
}

double rel_err(double got, double want) {
  const double denom = std::max({1.0, std::fabs(got), std::fabs(want)});
  return std::fabs(got - want) / denom;
}

// Quadrature of sin^e over [0, pi] with the singular endpoints resolved via
// exact endpoint distances.
quadrature::QuadratureResult sin_power_quadrature(double e, double rel_tol) {
  return quadrature::integrate_finite(
      [e](double, double dist_a, double dist_b) {
        return std::pow(std::sin(std::min(dist_a, dist_b)), e);
      },
      0.0, kPi, rel_tol);
}

// Closed angular factor including the analytic continuation below e = -1,
// where the convergent sin_power refuses to answer.
double continued_sin_power(double e) {
  if (e > -1.0) return angular::sin_power(e);
  return std::pow(2.0, e) * specfun::beta((e + 1.0) / 2.0, (e + 1.0) / 2.0);
}

struct CheckContext {
  double oracle_tol = 1e-9;
  std::ostringstream detail;
};

using CheckFn = std::function<bool(CheckContext&)>;

struct Check {
  const char* name;
  CheckFn fn;
};

// ---------------------------------------------------------------------------
// special-function identities

bool check_reflection(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a0001);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    // Both gammas evaluate on the positive axis here, so neither side is
    // computed through the identity being tested.
    const double x = uniform(rng, 0.01, 0.99);
    const double lhs = specfun::gamma(x) * specfun::gamma(1.0 - x) *
                       specfun::sinpi(x) / kPi;
    worst = std::max(worst, std::fabs(lhs - 1.0));
  }
  ctx.detail << "worst |G(x)G(1-x)sin(pi x)/pi - 1| = " << worst;
  return worst <= 1e-10;
}

bool check_duplication(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a0002);
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
  ctx.detail << "500 points in (-6,12), worst rel = " << worst;
  return worst <= 1e-10;
}

bool check_inversion_series(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a0003);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double z = uniform(rng, 0.05, 30.0);
    const double rhs = -std::pow(2.0, -2.0 * z) * specfun::sinpi(z) / kPi *
                       specfun::gamma(2.0 * z + 1.0) / specfun::gamma(z) *
                       specfun::beta(0.5, z);
    worst = std::max(worst, rel_err(specfun::rgamma(-z), rhs));
  }
  ctx.detail << "1/Gamma(-z) vs beta-series form, worst rel = " << worst;
  return worst <= 1e-10;
}

bool check_rgamma_zeros(CheckContext& ctx) {
  for (int k = 0; k <= 30; ++k) {
    if (specfun::rgamma(-static_cast<double>(k)) != 0.0) {
      ctx.detail << "rgamma(" << -k << ") != 0";
      return false;
    }
    if (specfun::sinpi(static_cast<double>(k)) != 0.0) {
      ctx.detail << "sinpi(" << k << ") != 0";
      return false;
    }
  }
  ctx.detail << "rgamma and sinpi vanish exactly on the integer lattice";
  return true;
}

bool check_pole_errors(CheckContext& ctx) {
  int caught = 0;
  for (double x : {0.0, -1.0, -2.0, -7.0}) {
    try {
      specfun::gamma(x);
    } catch (const PoleError&) {
      ++caught;
    }
    try {
      int s = 0;
      specfun::lgamma_signed(x, s);
    } catch (const PoleError&) {
      ++caught;
    }
  }
  try {
    specfun::beta(-1.0, 0.5);
  } catch (const PoleError&) {
    ++caught;
  }
  ctx.detail << caught << "/9 pole sites raised PoleError";
  return caught == 9;
}

// ---------------------------------------------------------------------------
// measures

bool check_surface_values(CheckContext& ctx) {
  double worst = rel_err(sphere_measure::surface(1.0), 2.0);
  worst = std::max(worst, rel_err(sphere_measure::surface(2.0), 2.0 * kPi));
  worst = std::max(worst, rel_err(sphere_measure::surface(3.0), 4.0 * kPi));
  worst =
      std::max(worst, rel_err(sphere_measure::surface(4.0), 2.0 * kPi * kPi));
  worst =
      std::max(worst, rel_err(sphere_measure::surface(-1.0), -1.0 / kPi));
  if (sphere_measure::surface(-4.0) != 0.0) {
    ctx.detail << "surface(-4) not exactly 0";
    return false;
  }
  ctx.detail << "known dimensions, worst rel = " << worst;
  return worst <= 1e-13;
}

bool check_surface_recurrence(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a0004);
  double worst = 0.0;
  int n = 0;
  while (n < 500) {
    const double d = uniform(rng, -10.0, 10.0);
    if (std::fabs(d - 2.0 * std::nearbyint(d / 2.0)) < 0.01) continue;
    ++n;
    worst = std::max(worst, rel_err(sphere_measure::surface(d + 2.0),
                                    (2.0 * kPi / d) * sphere_measure::surface(d)));
  }
  ctx.detail << "Omega(d+2) = (2 pi / d) Omega(d), worst rel = " << worst;
  return worst <= 1e-12;
}

bool check_volume(CheckContext& ctx) {
  const double v0 = sphere_measure::volume(1e-6);
  if (std::fabs(v0 - 1.0) > 1e-5) {
    ctx.detail << "volume(1e-6) = " << v0;
    return false;
  }
  if (rel_err(sphere_measure::volume(3.0), 4.0 * kPi / 3.0) > 1e-13) {
    ctx.detail << "volume(3) off";
    return false;
  }
  if (sphere_measure::volume(-2.0) != 0.0) {
    ctx.detail << "volume(-2) not exactly 0";
    return false;
  }
  bool threw = false;
  try {
    sphere_measure::volume(0.0);
  } catch (const PoleError&) {
    threw = true;
  }
  ctx.detail << "limit, exact zero and d=0 pole all behave";
  return threw;
}

bool closure_battery(CheckContext& ctx, std::uint64_t seed, double lo,
                     double hi, double margin, int count, double threshold) {
  std::mt19937_64 rng(seed);
  const double quad_tol = std::min(ctx.oracle_tol, 1e-11);
  double worst = 0.0;
  int n = 0;
  while (n < count) {
    const double d = margin > 0.0 ? uniform_off_even(rng, lo, hi, margin)
                                  : uniform(rng, lo, hi);
    if (d == 1.0) continue;
    ++n;
    const double c = sphere_measure::measure_coefficient(d);
    const double e = sphere_measure::sine_exponent(d);
    const auto s = sin_power_quadrature(e, quad_tol);
    worst = std::max(
        worst, std::fabs(c * s.value - sphere_measure::surface(d)) /
                   std::fabs(sphere_measure::surface(d)));
  }
  ctx.detail << count << " points, worst rel closure error = " << worst;
  return worst <= threshold;
}

bool check_closure_positive(CheckContext& ctx) {
  return closure_battery(ctx, 0xd1a0005, 1.05, 9.0, 0.0, 60, 1e-9);
}

bool check_closure_critical(CheckContext& ctx) {
  if (!closure_battery(ctx, 0xd1a0006, 0.05, 0.95, 0.0, 60, 1e-9)) {
    return false;
  }
  // The variant coefficient must miss closure by exactly sqrt(pi).
  std::mt19937_64 rng(0xd1a0016);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double d = uniform(rng, 0.05, 0.95);
    const double ratio = sphere_measure::measure_coefficient_variant(d) /
                         sphere_measure::measure_coefficient(d);
    worst = std::max(worst, std::fabs(ratio - kSqrtPi));
  }
  ctx.detail << "; variant/consistent - sqrt(pi), worst = " << worst;
  return worst <= 1e-9;
}

bool check_closure_negative(CheckContext& ctx) {
  return closure_battery(ctx, 0xd1a0007, -6.0, -0.05, 0.05, 60, 1e-9);
}

bool check_decomposition_closure(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a0008);
  double worst = 0.0;
  int cases = 0;
  for (int i = 0; i < 30; ++i) {
    double d;
    switch (i % 3) {
      case 0: d = uniform(rng, 1.05, 8.0); break;
      case 1: d = uniform(rng, 0.05, 0.95); break;
      default: d = uniform_off_even(rng, -6.0, -0.05, 0.05); break;
    }
    const int mx = sphere_measure::max_angles(d);
    for (int n = 1; n <= mx; ++n) {
      const auto dec = sphere_measure::decompose(d, n);
      double acc = dec.prefactor;
      for (const auto& f : dec.angular_factors) {
        acc *= continued_sin_power(f.sine_exponent);
      }
      worst = std::max(worst, rel_err(acc, sphere_measure::surface(d)));
      ++cases;
    }
  }
  ctx.detail << cases << " (d, n) cases across all regimes, worst rel = "
             << worst;
  return worst <= 1e-9;
}

// ---------------------------------------------------------------------------
// angular integrals

bool check_angular_parity(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a0009);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double d = uniform_off_even(rng, -6.0, -0.05, 0.05);
    const auto p = angular::sin_power_cos(d);
    worst = std::max(worst, std::fabs(p.total) /
                                std::max(std::fabs(p.term1), std::fabs(p.term2)));
  }
  const auto m1 = angular::sin_power_cos(-1.0);
  const double pin = std::max(std::fabs(m1.term1 + kPi), std::fabs(m1.term2 - kPi));
  ctx.detail << "worst |total|/max(|terms|) = " << worst
             << "; d=-1 terms vs -/+pi off by " << pin;
  return worst <= 1e-12 && pin <= 1e-12 * kPi;
}

bool check_angular_dual_route(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a000a);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double d = uniform_off_even(rng, -8.0, -2.05, 0.05);
    worst = std::max(worst,
                     rel_err(angular::sin_power_over_one_minus_cos(d),
                             angular::sin_power_over_one_minus_cos_reduced(d)));
  }
  ctx.detail << "beta form vs duplication form, worst rel = " << worst;
  return worst <= 1e-12;
}

bool check_beta_kernel_quadrature(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a000b);
  const double quad_tol = std::min(ctx.oracle_tol, 1e-10);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double alpha = uniform(rng, -0.9, 3.0);
    const double beta_exp = uniform(rng, -0.9, 3.0);
    const auto q = quadrature::integrate_finite(
        [alpha, beta_exp](double, double dist_a, double dist_b) {
          // 1-z = distance to b, 1+z = distance to a
          return std::pow(dist_b, alpha) * std::pow(dist_a, beta_exp);
        },
        -1.0, 1.0, quad_tol);
    worst = std::max(
        worst, rel_err(angular::beta_kernel(alpha, beta_exp), q.value));
  }
  ctx.detail << "40 exponent pairs, worst rel vs quadrature = " << worst;
  return worst <= std::max(ctx.oracle_tol, 1e-9);
}

// ---------------------------------------------------------------------------
// radial finite parts

bool check_radial_reference(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a000c);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double a = uniform(rng, -3.5, 2.5);
    if (std::fabs(a + 1.0 - std::nearbyint(a + 1.0)) < 0.05) continue;
    radial::RadialIntegrandSpec spec{
        radial::RadialIntegrandKind::kPowerOverOnePlus, a, 1.0};
    worst = std::max(worst, rel_err(radial::finite_part_reference(spec),
                                    radial::closed_form_finite_part(spec)));
  }
  for (int i = 0; i < 50; ++i) {
    double a = uniform(rng, -3.5, 2.5);
    const double n = std::nearbyint(a + 1.0);
    if (n <= 0.0 && std::fabs(a + 1.0 - n) < 0.05) continue;
    radial::RadialIntegrandSpec spec{radial::RadialIntegrandKind::kPowerExp, a,
                                     1.0};
    worst = std::max(worst, rel_err(radial::finite_part_reference(spec),
                                    radial::closed_form_finite_part(spec)));
  }
  ctx.detail << "series-peeled route vs closed forms, worst rel = " << worst;
  return worst <= 1e-10;
}

bool check_extraction_accuracy(CheckContext& ctx) {
  double worst_margin = 0.0;
  for (double d : {1.0, 3.0, 0.5, -1.3}) {
    radial::RadialIntegrandSpec spec{
        radial::RadialIntegrandKind::kPowerOverOnePlus, d / 2.0 - 1.0, 1.0};
    const auto ex = radial::extract_finite_part(
        spec, radial::default_delta_grid(1.0), radial::default_K_grid(1.0));
    const double err =
        std::fabs(ex.finite_part - radial::closed_form_finite_part(spec));
    const double allowed = std::max(1e-4, ex.error_estimate);
    worst_margin = std::max(worst_margin, err / allowed);
  }
  {
    radial::RadialIntegrandSpec spec{radial::RadialIntegrandKind::kPowerExp,
                                     -1.5, 1.0};
    const auto ex = radial::extract_finite_part(
        spec, radial::default_delta_grid(1.0), radial::default_K_grid(1.0));
    const double err =
        std::fabs(ex.finite_part - radial::closed_form_finite_part(spec));
    worst_margin =
        std::max(worst_margin, err / std::max(1e-4, ex.error_estimate));
  }
  ctx.detail << "worst |error| / max(1e-4, estimate) = " << worst_margin;
  return worst_margin <= 1.0;
}

bool check_extraction_grid_doubling(CheckContext& ctx) {
  double worst = 0.0;
  for (double d : {1.0, 3.0, -1.3}) {
    radial::RadialIntegrandSpec spec{
        radial::RadialIntegrandKind::kPowerOverOnePlus, d / 2.0 - 1.0, 1.0};
    auto dg = radial::default_delta_grid(1.0);
    auto kg = radial::default_K_grid(1.0);
    const auto base = radial::extract_finite_part(spec, dg, kg);
    for (auto& v : dg) v *= 2.0;
    for (auto& v : kg) v *= 2.0;
    const auto doubled = radial::extract_finite_part(spec, dg, kg);
    const double shift = std::fabs(doubled.finite_part - base.finite_part);
    const double estimate =
        std::max(base.error_estimate, doubled.error_estimate);
    worst = std::max(worst, shift / (3.0 * estimate));
  }
  ctx.detail << "worst |shift| / (3 estimate) = " << worst;
  return worst <= 1.0;
}

// ---------------------------------------------------------------------------
// loop integrals

bool check_bubble(CheckContext& ctx) {
  const auto one = loop_integrals::vacuum_bubble(1.0, 1.0);
  if (std::fabs(one.closed_form - 0.5) > 1e-12) {
    ctx.detail << "bubble(1,1) != 1/2";
    return false;
  }
  std::mt19937_64 rng(0xd1a000d);
  double worst = 0.0;
  double worst_assembly = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double d = uniform(rng, 0.2, 1.8);
    const auto b = loop_integrals::vacuum_bubble(
        d, uniform(rng, 0.5, 2.0), true, std::min(ctx.oracle_tol, 1e-10));
    worst = std::max(worst, *b.abs_diff / std::fabs(b.closed_form));
    double prod = 1.0;
    for (const auto& c : b.components) prod *= c.second;
    worst_assembly = std::max(worst_assembly, rel_err(prod, b.closed_form));
  }
  ctx.detail << "oracle worst rel = " << worst
             << ", component assembly worst rel = " << worst_assembly;
  return worst <= 1e-8 && worst_assembly <= 1e-14;
}

bool check_dotprod_parity(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a000e);
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const double d = uniform_off_even(rng, -6.0, -0.05, 0.05);
    const auto k =
        loop_integrals::dot_product_integral(d, uniform(rng, 0.1, 5.0));
    double max_comp = 0.0;
    for (const auto& c : k.components) {
      max_comp = std::max(max_comp, std::fabs(c.second));
    }
    worst = std::max(worst, std::fabs(k.closed_form) / max_comp);
  }
  ctx.detail << "worst |total| / max|component| = " << worst;
  return worst <= 1e-12;
}

bool check_extmom(CheckContext& ctx) {
  std::mt19937_64 rng(0xd1a000f);
  double worst = 0.0;
  int n = 0;
  while (n < 6) {
    const double d = uniform(rng, -4.0, -2.1);
    const double t = (d - 1.0) / 2.0;
    if (std::fabs(t - std::nearbyint(t)) < 0.05) continue;
    if (std::fabs(d - 2.0 * std::nearbyint(d / 2.0)) < 0.05) continue;
    ++n;
    const auto g = loop_integrals::external_momentum_integral(
        d, uniform(rng, 0.5, 3.0), uniform(rng, 0.5, 3.0), true,
        std::min(ctx.oracle_tol, 1e-10));
    worst = std::max(worst, *g.abs_diff / std::fabs(g.closed_form));
  }
  // mass and momentum scaling
  const double d0 = -2.7;
  const auto base = loop_integrals::external_momentum_integral(d0, 1.0, 1.0);
  const auto scaled_m =
      loop_integrals::external_momentum_integral(d0, 1.0, 1.7);
  const auto scaled_k =
      loop_integrals::external_momentum_integral(d0, 2.3, 1.0);
  const double mass_err = rel_err(
      scaled_m.closed_form, std::pow(1.7, d0 - 3.0) * base.closed_form);
  const double mom_err =
      rel_err(scaled_k.closed_form, base.closed_form / 2.3);
  ctx.detail << "oracle worst rel = " << worst << ", scaling errors "
             << mass_err << " / " << mom_err;
  return worst <= 1e-8 && mass_err <= 1e-12 && mom_err <= 1e-12;
}

bool check_quadrature_reference(CheckContext& ctx) {
  double worst = 0.0;
  const auto s = quadrature::integrate_finite(
      [](double x) { return std::sin(x); }, 0.0, kPi, 1e-13);
  worst = std::max(worst, rel_err(s.value, 2.0));
  const auto r = quadrature::integrate_finite(
      [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-13);
  worst = std::max(worst, rel_err(r.value, 2.0));
  const auto h = quadrature::integrate_semi_infinite(
      [](double y) { return std::pow(y, -0.5) / (1.0 + y); }, 0.0, 1e-13);
  worst = std::max(worst, rel_err(h.value, kPi));
  const auto steep = sin_power_quadrature(-0.95, 1e-12);
  worst = std::max(worst, rel_err(steep.value, 41.369540452732887247));
  ctx.detail << "endpoint-singular references, worst rel = " << worst;
  return worst <= 1e-11;
}

const std::vector<Check>& all_checks() {
  static const std::vector<Check> checks = {
      {"reflection_identity", check_reflection},
      {"duplication_identity", check_duplication},
      {"inversion_series_identity", check_inversion_series},
      {"rgamma_exact_zeros", check_rgamma_zeros},
      {"gamma_pole_errors", check_pole_errors},
      {"surface_known_values", check_surface_values},
      {"surface_recurrence", check_surface_recurrence},
      {"volume_limits", check_volume},
      {"closure_positive", check_closure_positive},
      {"closure_critical", check_closure_critical},
      {"closure_negative", check_closure_negative},
      {"decomposition_closure", check_decomposition_closure},
      {"angular_split_parity", check_angular_parity},
      {"angular_dual_route", check_angular_dual_route},
      {"beta_kernel_quadrature", check_beta_kernel_quadrature},
      {"radial_reference_vs_closed", check_radial_reference},
      {"extraction_accuracy", check_extraction_accuracy},
      {"extraction_grid_doubling", check_extraction_grid_doubling},
      {"bubble_oracle", check_bubble},
      {"dotprod_parity", check_dotprod_parity},
      {"extmom_oracle", check_extmom},
      {"quadrature_reference", check_quadrature_reference},
  };
  return checks;
}

}  // namespace

int run_verify(const std::string& filter, double oracle_tol) {
  int failures = 0;
  int ran = 0;
  for (const auto& check : all_checks()) {
    if (!filter.empty() &&
        std::string(check.name).find(filter) == std::string::npos) {
      continue;
    }
    ++ran;
    CheckContext ctx;
    ctx.oracle_tol = oracle_tol;
    bool ok = false;
    try {
      ok = check.fn(ctx);
    } catch (const std::exception& e) {
      ctx.detail.str("");
      ctx.detail << "threw: " << e.what();
    }
    std::printf("%s %-28s %s\n", ok ? "PASS" : "FAIL", check.name,
                ctx.detail.str().c_str());
    if (!ok) ++failures;
  }
  if (ran == 0) {
    std::printf("no checks match filter '%s'\n", filter.c_str());
    return 1;
  }
  std::printf("%d/%d checks passed\n", ran - failures, ran);
  return failures;
}

}  // namespace dimkit_cli
