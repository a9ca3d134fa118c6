#include "dimkit/radial.hpp"

#include <Eigen/Core>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dimkit/errors.hpp"
#include "dimkit/quadrature.hpp"
#include "dimkit/specfun.hpp"

namespace dimkit::radial {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCollisionGuard = 1e-9;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// exp(-y) underflows long before this; integrating the exponential kernel
// further right only accumulates exact zeros.
constexpr double kExpCutoff = 800.0;

double integrand_value(const RadialIntegrandSpec& spec, double y) {
  switch (spec.kind) {
    case RadialIntegrandKind::kPurePower:
      return std::pow(y, spec.exponent);
    case RadialIntegrandKind::kPowerOverOnePlus:
      return std::pow(y, spec.exponent) / (1.0 + y);
    case RadialIntegrandKind::kPowerExp:
      // exp(a log y - y) avoids pow-underflow * exp-overflow pairings.
      return std::exp(spec.exponent * std::log(y) - y);
  }
  return 0.0;
}

void validate_grid(const std::vector<double>& grid, const char* name) {
  if (grid.size() < 2) {
    throw std::invalid_argument(std::string(name) + " needs at least 2 points");
  }
  double prev = 0.0;
  for (double g : grid) {
    if (!std::isfinite(g) || g <= 0.0) {
      throw std::invalid_argument(std::string(name) +
                                  " entries must be finite and positive");
    }
    if (g <= prev) {
      throw std::invalid_argument(std::string(name) +
                                  " must be strictly increasing");
    }
    prev = g;
  }
}

[[noreturn]] void throw_collision(double p) {
  throw NoFinitePartError(
      "cutoff power " + std::to_string(p) +
      " collides with the constant term: the cutoff dependence is "
      "logarithmic and no finite part separates");
}

struct CutoffBasis {
  std::vector<double> lower;  // powers of x = (delta/scale)^2
  std::vector<double> upper;  // powers of Y = (K/scale)^2
  double lower_dropped = kNan;  // first truncated power on each side
  double upper_dropped = kNan;
};

CutoffBasis build_basis(const RadialIntegrandSpec& spec, double window) {
  CutoffBasis basis;
  const double a = spec.exponent;
  switch (spec.kind) {
    case RadialIntegrandKind::kPurePower: {
      const double p = a + 1.0;
      if (std::fabs(p) < kCollisionGuard) throw_collision(p);
      if (p <= window) basis.lower.push_back(p);
      if (p >= -window) basis.upper.push_back(p);
      // The basis is exact for a pure power; nothing is truncated.
      break;
    }
    case RadialIntegrandKind::kPowerOverOnePlus: {
      // 1/(1+y) expanded around y = 0 on the lower side and around
      // y = infinity on the upper side.
      for (int j = 0;; ++j) {
        const double p = a + 1.0 + j;
        if (p > window) {
          basis.lower_dropped = p;
          break;
        }
        if (std::fabs(p) < kCollisionGuard) throw_collision(p);
        basis.lower.push_back(p);
      }
      for (int j = 0;; ++j) {
        const double q = a - j;
        if (q < -window) {
          basis.upper_dropped = q;
          break;
        }
        if (std::fabs(q) < kCollisionGuard) throw_collision(q);
        basis.upper.push_back(q);
      }
      break;
    }
    case RadialIntegrandKind::kPowerExp: {
      // Lower-side series of exp(-y); the upper side is exponentially
      // suppressed and contributes no cutoff powers at all.
      for (int j = 0;; ++j) {
        const double p = a + 1.0 + j;
        if (p > window) {
          basis.lower_dropped = p;
          break;
        }
        if (std::fabs(p) < kCollisionGuard) throw_collision(p);
        basis.lower.push_back(p);
      }
      break;
    }
  }
  return basis;
}

// (exp(-y) - sum_{j<k} (-y)^j/j!) / y^k, evaluated without cancellation for
// small y via the tail series (-1)^k sum_{m>=0} (-y)^m / (m+k)!.
double exp_remainder(double y, int k) {
  if (y <= 1.0) {
    double term = 1.0;
    for (int i = 1; i <= k; ++i) term /= static_cast<double>(i);  // 1/k!
    double sum = term;
    for (int m = 0; m < 80; ++m) {
      term *= -y / static_cast<double>(m + k + 1);
      sum += term;
      if (std::fabs(term) <= 1e-20 * std::fabs(sum)) break;
    }
    return (k % 2 != 0) ? -sum : sum;
  }
  double partial = 0.0;
  double term = 1.0;
  for (int j = 0; j < k; ++j) {
    partial += term;
    term *= -y / static_cast<double>(j + 1);
  }
  return (std::exp(-y) - partial) / std::pow(y, k);
}

// Finite part of the integral of y^c/(1+y) over (0, 1]: strip enough series
// terms of 1/(1+y) that the remainder integral converges, keep the boundary
// values at y = 1.
double algebraic_half_reference(double c, double rel_tol) {
  int k = 0;
  while (c + 1.0 + static_cast<double>(k) < 0.25) ++k;
  double sum = 0.0;
  for (int j = 0; j < k; ++j) {
    const double sign = (j % 2 != 0) ? -1.0 : 1.0;
    sum += sign / (c + 1.0 + static_cast<double>(j));
  }
  const double ck = c + static_cast<double>(k);
  const auto q = quadrature::integrate_finite(
      [ck](double y) { return std::pow(y, ck) / (1.0 + y); }, 0.0, 1.0,
      rel_tol);
  const double sign_k = (k % 2 != 0) ? -1.0 : 1.0;
  return sum + sign_k * q.value;
}

bool near_integer(double x, double guard) {
  return std::fabs(x - std::nearbyint(x)) < guard;
}

}  // namespace

std::vector<double> default_delta_grid(double scale) {
  detail::require_finite(scale, "scale");
  return {0.5e-3 * scale, 1e-3 * scale, 2e-3 * scale, 4e-3 * scale,
          8e-3 * scale};
}

std::vector<double> default_K_grid(double scale) {
  detail::require_finite(scale, "scale");
  return {1e3 * scale, 2e3 * scale, 4e3 * scale, 8e3 * scale, 16e3 * scale};
}

ExtractionResult extract_finite_part(const RadialIntegrandSpec& spec,
                                     const std::vector<double>& delta_grid,
                                     const std::vector<double>& K_grid,
                                     const ExtractionOptions& options) {
  detail::require_finite(spec.exponent, "exponent");
  detail::require_finite(spec.scale, "scale");
  if (spec.scale <= 0.0) {
    throw std::invalid_argument("scale must be positive");
  }
  validate_grid(delta_grid, "delta_grid");
  validate_grid(K_grid, "K_grid");
  if (delta_grid.back() >= 0.3 * spec.scale) {
    throw std::invalid_argument(
        "delta grid reaches into the crossover region; keep delta < 0.3 scale");
  }
  if (K_grid.front() <= 3.0 * spec.scale) {
    throw std::invalid_argument(
        "K grid reaches into the crossover region; keep K > 3 scale");
  }

  const CutoffBasis basis = build_basis(spec, options.exponent_window);
  const auto n_lower = static_cast<Eigen::Index>(basis.lower.size());
  const auto n_upper = static_cast<Eigen::Index>(basis.upper.size());
  const auto n_delta = static_cast<Eigen::Index>(delta_grid.size());
  const auto n_K = static_cast<Eigen::Index>(K_grid.size());
  if (n_lower + 1 > n_delta) {
    throw ConditioningError(
        "delta grid too small: " + std::to_string(basis.lower.size()) +
        " lower cutoff powers plus the constant need at least " +
        std::to_string(basis.lower.size() + 1) + " delta points");
  }
  if (n_upper + 1 > n_K) {
    throw ConditioningError(
        "K grid too small: " + std::to_string(basis.upper.size()) +
        " upper cutoff powers plus the constant need at least " +
        std::to_string(basis.upper.size() + 1) + " K points");
  }

  const Eigen::Index rows = n_delta * n_K;
  const Eigen::Index cols = 1 + n_lower + n_upper;
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  Eigen::VectorXd quad_err(rows);

  Eigen::Index r = 0;
  for (double delta : delta_grid) {
    const double x = (delta / spec.scale) * (delta / spec.scale);
    for (double K : K_grid) {
      double Y = (K / spec.scale) * (K / spec.scale);
      if (spec.kind == RadialIntegrandKind::kPowerExp) {
        Y = std::min(Y, kExpCutoff);
      }
      const auto q = quadrature::integrate_finite(
          [&spec](double y) { return integrand_value(spec, y); }, x, Y,
          options.quadrature_rel_tol);
      b(r) = q.value;
      quad_err(r) = q.error_estimate;
      A(r, 0) = 1.0;
      for (Eigen::Index c = 0; c < n_lower; ++c) {
        A(r, 1 + c) = std::pow(x, basis.lower[static_cast<size_t>(c)]);
      }
      for (Eigen::Index c = 0; c < n_upper; ++c) {
        A(r, 1 + n_lower + c) =
            std::pow(Y, basis.upper[static_cast<size_t>(c)]);
      }
      ++r;
    }
  }

  // Columns span many orders of magnitude; equilibrate before judging rank.
  Eigen::VectorXd col_scale(cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    col_scale(c) = A.col(c).cwiseAbs().maxCoeff();
    if (col_scale(c) == 0.0 || !std::isfinite(col_scale(c))) {
      throw ConditioningError("cutoff-power column " + std::to_string(c) +
                              " is degenerate on this grid");
    }
  }
  const Eigen::MatrixXd A_eq = A * col_scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A_eq,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double sv_min = sv(cols - 1);
  const double condition =
      sv_min > 0.0 ? sv(0) / sv_min : std::numeric_limits<double>::infinity();
  if (condition > options.condition_limit) {
    throw ConditioningError(
        "extraction fit is ill-conditioned on this grid (condition " +
        std::to_string(condition) + " exceeds " +
        std::to_string(options.condition_limit) +
        "); widen the grids or the exponent window");
  }

  const Eigen::VectorXd beta_eq = svd.solve(b);
  const Eigen::VectorXd beta = beta_eq.cwiseQuotient(col_scale);

  // Row 0 of the pseudoinverse maps data perturbations straight onto the
  // constant term; col_scale(0) is 1 (column of ones), so no rescale needed.
  const Eigen::MatrixXd& U = svd.matrixU();
  const Eigen::MatrixXd& V = svd.matrixV();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(rows);
  for (Eigen::Index k = 0; k < cols; ++k) {
    if (sv(k) > 0.0) w += (V(0, k) / sv(k)) * U.col(k);
  }

  const Eigen::VectorXd residual = A_eq * beta_eq - b;
  const double dof = std::max<double>(1.0, static_cast<double>(rows - cols));
  const double sigma2 = residual.squaredNorm() / dof;
  const double fit_noise = std::sqrt(sigma2 * w.squaredNorm());
  const double quad_noise = w.cwiseAbs().dot(quad_err);

  const double x_max =
      (delta_grid.back() / spec.scale) * (delta_grid.back() / spec.scale);
  const double Y_min =
      (K_grid.front() / spec.scale) * (K_grid.front() / spec.scale);
  double truncation_bias = 0.0;
  if (std::isfinite(basis.lower_dropped)) {
    truncation_bias += std::pow(x_max, basis.lower_dropped);
  }
  if (std::isfinite(basis.upper_dropped)) {
    truncation_bias += std::pow(Y_min, basis.upper_dropped);
  }

  ExtractionResult result;
  result.finite_part = beta(0);
  result.error_estimate = 10.0 * fit_noise + quad_noise + truncation_bias +
                          4e-16 * std::fabs(beta(0));
  result.stripped_terms.reserve(static_cast<size_t>(n_lower + n_upper));
  for (Eigen::Index c = 0; c < n_lower; ++c) {
    result.stripped_terms.push_back({StrippedTerm::Side::kLower,
                                     basis.lower[static_cast<size_t>(c)],
                                     beta(1 + c)});
  }
  for (Eigen::Index c = 0; c < n_upper; ++c) {
    result.stripped_terms.push_back({StrippedTerm::Side::kUpper,
                                     basis.upper[static_cast<size_t>(c)],
                                     beta(1 + n_lower + c)});
  }
  return result;
}

ExtractionResult extract_finite_part(const RadialIntegrandSpec& spec,
                                     const std::vector<double>& delta_grid,
                                     const std::vector<double>& K_grid) {
  return extract_finite_part(spec, delta_grid, K_grid, ExtractionOptions{});
}

double finite_part_reference(const RadialIntegrandSpec& spec, double rel_tol) {
  detail::require_finite(spec.exponent, "exponent");
  const double a = spec.exponent;
  switch (spec.kind) {
    case RadialIntegrandKind::kPurePower: {
      if (std::fabs(a + 1.0) < kCollisionGuard) throw_collision(a + 1.0);
      return 0.0;
    }
    case RadialIntegrandKind::kPowerOverOnePlus: {
      if (near_integer(a + 1.0, kCollisionGuard)) {
        throw PoleError(
            "finite part of the algebraic kernel has a pole at integer "
            "a + 1 = " +
            std::to_string(a + 1.0));
      }
      // Split at y = 1; the upper half maps onto the lower-half form under
      // y -> 1/y with exponent -a-1.
      return algebraic_half_reference(a, rel_tol) +
             algebraic_half_reference(-a - 1.0, rel_tol);
    }
    case RadialIntegrandKind::kPowerExp: {
      const double n = std::nearbyint(a + 1.0);
      if (n <= 0.0 && std::fabs(a + 1.0 - n) < kCollisionGuard) {
        throw PoleError(
            "finite part of the exponential kernel has a pole at "
            "non-positive integer a + 1 = " +
            std::to_string(a + 1.0));
      }
      int k = 0;
      while (a + 1.0 + static_cast<double>(k) < 0.25) ++k;
      double sum = 0.0;
      double inv_fact = 1.0;
      for (int j = 0; j < k; ++j) {
        const double sign = (j % 2 != 0) ? -1.0 : 1.0;
        sum += sign * inv_fact / (a + 1.0 + static_cast<double>(j));
        inv_fact /= static_cast<double>(j + 1);
      }
      const double ak = a + static_cast<double>(k);
      const auto near_zero = quadrature::integrate_finite(
          [ak, k](double y) { return std::pow(y, ak) * exp_remainder(y, k); },
          0.0, 1.0, rel_tol);
      const auto tail = quadrature::integrate_semi_infinite(
          [a](double y) { return std::exp(a * std::log(y) - y); }, 1.0,
          rel_tol);
      return sum + near_zero.value + tail.value;
    }
  }
  throw Error("unreachable integrand kind");
}

double closed_form_finite_part(const RadialIntegrandSpec& spec) {
  detail::require_finite(spec.exponent, "exponent");
  const double a = spec.exponent;
  switch (spec.kind) {
    case RadialIntegrandKind::kPurePower:
      throw std::invalid_argument(
          "a pure power has no finite part to report: the whole integral is "
          "cutoff powers");
    case RadialIntegrandKind::kPowerOverOnePlus: {
      if (near_integer(a + 1.0, kCollisionGuard)) {
        throw PoleError(
            "finite part of the algebraic kernel has a pole at integer "
            "a + 1 = " +
            std::to_string(a + 1.0));
      }
      return kPi / specfun::sinpi(a + 1.0);
    }
    case RadialIntegrandKind::kPowerExp: {
      const double n = std::nearbyint(a + 1.0);
      if (n <= 0.0 && std::fabs(a + 1.0 - n) < kCollisionGuard) {
        throw PoleError(
            "finite part of the exponential kernel has a pole at "
            "non-positive integer a + 1 = " +
            std::to_string(a + 1.0));
      }
      return specfun::gamma(a + 1.0);
    }
  }
  throw Error("unreachable integrand kind");
}

}  // namespace dimkit::radial
