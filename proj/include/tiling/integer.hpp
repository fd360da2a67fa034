#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace tiling {

/// Arbitrary-precision integer used for every coefficient in the library.
using Int = mpz_class;
using Rational = mpq_class;

/// Thrown when an input violates a documented precondition or schema.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a configured capacity (l1 cap, Omega cap) would be exceeded.
/// Distinct from a negative answer: the instance is undecided by this build.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown for mathematically unsupported requests (finite-order quotient,
/// level shift with zero sum, ...).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int64_t to_int64(const Int& v) {
  if (!v.fits_slong_p()) throw CapacityError("integer does not fit in 64 bits: " + v.get_str());
  return v.get_si();
}

/// Floor modulus with result in [0, m).
inline int64_t floor_mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline int64_t lcm64(int64_t a, int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

}  // namespace tiling
