#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dimkit {

// Base class for all dimkit-specific failures. Argument validation failures
// (non-finite inputs, out-of-range counts, malformed grids) throw
// std::invalid_argument instead and are not part of this hierarchy.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A gamma-type pole was hit: non-positive integer gamma argument, an even
// dimension where the measure degenerates, or a UV pole of a loop integral.
class PoleError : public Error {
 public:
  using Error::Error;
};

// The requested operation is not defined in the dimension regime of the
// argument (e.g. angular measure coefficients at d = 1).
class RegimeError : public Error {
 public:
  using Error::Error;
};

// The integral diverges for the given exponents and no finite interpretation
// is provided by the operation.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// The extraction fit matrix is numerically rank-deficient or its condition
// number exceeds the safety gate.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

// A stripped scale exponent collides with zero: the cutoff dependence is
// logarithmic and no constant term can be separated.
class NoFinitePartError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

}  // namespace detail

}  // namespace dimkit
