#include "dimkit/quadrature.hpp"

#include <cmath>
#include <utility>

#include "dimkit/errors.hpp"

namespace dimkit::quadrature {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr int kMaxLevel = 12;
// Nodes whose |value| falls below this fraction of the running sum of
// absolute values terminate the current side of the level scan once two in a
// row occur past t = 2 (the double-exponential tail is then already below
// rounding error of the total).
constexpr double kTailCut = 1e-18;
constexpr double kMinTailT = 2.0;

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

// One transformed node: valid=false means the abscissa or weight is beyond
// double representability and the node is skipped (its true contribution is
// below rounding error for any integrand the transform admits).
struct Node {
  bool valid = false;
  double g = 0.0;  // integrand value times transformed weight
};

// Level-refined trapezoidal driver in the transformed variable t. gen(t)
// evaluates one node. Level L uses step 2^-L; level 0 covers the integer
// grid and every later level the odd multiples, so I_L = h_L * S_L with S_L
// accumulating all node values seen so far.
template <typename Gen>
QuadratureResult run_levels(Gen&& gen, double t_max, double rel_tol,
                            long long& evaluations) {
  if (!(rel_tol >= 1e-15)) rel_tol = 1e-15;

  KahanSum sum;
  KahanSum abs_sum;

  auto take = [&](double t, int& tiny_run, bool& live) {
    Node n = gen(t);
    double mag = std::fabs(n.g);
    if (n.valid) {
      if (!std::isfinite(n.g)) {
        throw Error("quadrature: integrand produced a non-finite value");
      }
      sum.add(n.g);
      abs_sum.add(mag);
    }
    if (std::fabs(t) >= kMinTailT &&
        (!n.valid || mag <= kTailCut * abs_sum.value())) {
      if (++tiny_run >= 2) live = false;
    } else {
      tiny_run = 0;
    }
  };

  QuadratureResult res;
  double h = 1.0;
  double prev = 0.0;
  for (int level = 0; level <= kMaxLevel; ++level, h *= 0.5) {
    if (level == 0) {
      int tiny = 0;
      bool live = true;  // t = 0 never trips the tail cut
      take(0.0, tiny, live);
    }
    bool live_pos = true;
    bool live_neg = true;
    int tiny_pos = 0;
    int tiny_neg = 0;
    double start = (level == 0) ? 1.0 : h;
    double step = (level == 0) ? 1.0 : 2.0 * h;
    for (double t = start; t <= t_max && (live_pos || live_neg); t += step) {
      if (live_pos) take(t, tiny_pos, live_pos);
      if (live_neg) take(-t, tiny_neg, live_neg);
    }

    double estimate = h * sum.value();
    double l1 = h * abs_sum.value();
    if (level >= 2) {
      double diff = std::fabs(estimate - prev);
      res.value = estimate;
      res.error_estimate = std::fmax(diff, 2.2e-16 * l1);
      if (diff <= std::fmax(rel_tol * std::fabs(estimate), 5e-16 * l1)) {
        res.converged = true;
        res.evaluations = evaluations;
        return res;
      }
    }
    prev = estimate;
  }
  res.evaluations = evaluations;
  return res;  // converged stays false; best estimates already recorded
}

QuadratureResult tanh_sinh(const EndpointAwareIntegrand& f, double a, double b,
                           double rel_tol) {
  detail::require_finite(a, "a");
  detail::require_finite(b, "b");
  if (!(a < b)) throw std::invalid_argument("integration needs a < b");

  double width = b - a;
  double half = 0.5 * width;
  long long evaluations = 0;

  auto gen = [&](double t) -> Node {
    double s = kHalfPi * std::sinh(t);
    double em = std::exp(-2.0 * std::fabs(s));  // in (0, 1]
    if (em == 0.0) return {};                    // beyond representability
    double near = width * em / (1.0 + em);       // distance to closer endpoint
    double far = width / (1.0 + em);
    if (near == 0.0) return {};
    double da = (s >= 0.0) ? far : near;
    double db = (s >= 0.0) ? near : far;
    double x = (s >= 0.0) ? b - db : a + da;
    double q = 1.0 + em;
    double w = half * kHalfPi * std::cosh(t) * 4.0 * em / (q * q);
    if (w == 0.0) return {};
    ++evaluations;
    return {true, f(x, da, db) * w};
  };
  return run_levels(gen, 6.2, rel_tol, evaluations);
}

}  // namespace

QuadratureResult integrate_finite(const EndpointAwareIntegrand& f, double a,
                                  double b, double rel_tol) {
  return tanh_sinh(f, a, b, rel_tol);
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  double rel_tol) {
  auto wrapped = [&f, a, b](double x, double, double) {
    if (x <= a || x >= b) return 0.0;  // abscissa collided with an endpoint
    return f(x);
  };
  return tanh_sinh(wrapped, a, b, rel_tol);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a,
                                         double rel_tol) {
  detail::require_finite(a, "a");

  long long evaluations = 0;
  auto gen = [&](double t) -> Node {
    double u = std::exp(kHalfPi * std::sinh(t));  // in (0, inf)
    if (u == 0.0 || !std::isfinite(u)) return {};
    double x = a + u;
    if (!std::isfinite(x)) return {};
    if (x <= a && a != 0.0) return {};  // u below the spacing at a
    double w = kHalfPi * std::cosh(t) * u;
    if (!std::isfinite(w)) return {};
    ++evaluations;
    return {true, f(x) * w};
  };
  return run_levels(gen, 6.81, rel_tol, evaluations);
}

}  // namespace dimkit::quadrature
