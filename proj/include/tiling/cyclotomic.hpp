#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tiling/integer.hpp"
#include "tiling/qz_linear.hpp"

namespace tiling {

/// Dense integer polynomial, coefficient i multiplies x^i.
using IntPoly = std::vector<Int>;

int64_t euler_phi(int64_t n);

/// Phi_L, obtained by exact division of x^L - 1 by Phi_d for the proper
/// divisors d of L. Results are cached; safe to call concurrently.
IntPoly cyclotomic_poly(int64_t level);

/// Remainder of p modulo Phi_L, padded to exactly phi(L) coefficients.
IntPoly reduce_mod_cyclotomic(IntPoly p, int64_t level);

/// Element of Z[zeta_L] in the power basis {zeta^i : 0 <= i < phi(L)}.
class CycElement {
 public:
  CycElement() : CycElement(1) {}
  explicit CycElement(int64_t level);

  static CycElement monomial(int64_t exponent, int64_t level);
  /// Sum over j of counts[j] * zeta_L^j, for a count vector of any length.
  static CycElement from_counts(std::span<const Int> counts, int64_t level);

  int64_t level() const { return level_; }
  const IntPoly& coeffs() const { return coeffs_; }
  /// Zero test: Phi_L is the minimal polynomial, so this is exact.
  bool is_zero() const;
  const Int& coeff0() const { return coeffs_[0]; }

  CycElement operator+(const CycElement& o) const;
  CycElement operator-(const CycElement& o) const;
  bool operator==(const CycElement& o) const = default;

 private:
  int64_t level_;
  IntPoly coeffs_;
};

/// Least common multiple of the denominators (1 for an empty list).
int64_t common_level(std::span<const RationalMod1> thetas);

/// Exact test of e(theta_1) + ... + e(theta_n) == 0.
bool sum_roots_is_zero(std::span<const RationalMod1> thetas);

/// Exact test of sum_i weights[i] * zeta_M^exponents[i] == 0.
bool weighted_sum_is_zero(std::span<const int64_t> exponents, std::span<const int64_t> weights, int64_t modulus);

/// Product of the primes <= k.
int64_t mann_bound(int k);

inline constexpr int kDefaultOmegaCap = 6;

/// Rotation-canonical minimal vanishing tuple: first entry 0, every entry
/// of order dividing mann_bound(k).
struct MinimalTuple {
  std::vector<RationalMod1> entries;

  std::size_t size() const { return entries.size(); }
  bool operator==(const MinimalTuple&) const = default;
  auto operator<=>(const MinimalTuple&) const = default;
};

/// Omega_k: every ordered minimal vanishing k-tuple of M_k-th roots of unity
/// with first entry 0, sorted. Throws CapacityError when k > cap.
std::vector<MinimalTuple> enumerate_minimal_tuples(int k, int cap = kDefaultOmegaCap);

/// Assignments of exponents (mod `modulus`) to s weighted classes, first
/// class pinned to 0, such that sum_i multiplicities[i] * zeta^{v_i} vanishes
/// and no proper sub-multiset does. With all multiplicities 1 and
/// modulus = M_k this is exactly Omega_k written as exponent vectors.
std::vector<std::vector<int64_t>> minimal_weighted_assignments(std::span<const int64_t> multiplicities,
                                                               int64_t modulus);

/// Coefficient of zeta_L^0 in the power-basis form of e(theta). Q-linear in
/// the sense of the power basis; equals 1 at theta = 0.
Int retraction_coeff0(const RationalMod1& theta, int64_t level);

/// retraction_coeff0(t / level, level) for every t in [0, level). Cached.
const std::vector<Int>& retraction_table(int64_t level);

}  // namespace tiling
