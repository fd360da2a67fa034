#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tiling/integer.hpp"
#include "tiling/qz_linear.hpp"

namespace tiling {

/// A point of G = Z^d x prod Z/N_m, as an integer vector of length r.
struct GroupElement {
  std::vector<int64_t> coords;

  GroupElement() = default;
  explicit GroupElement(std::vector<int64_t> c) : coords(std::move(c)) {}
  GroupElement(std::initializer_list<int64_t> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  int64_t operator[](std::size_t i) const { return coords[i]; }
  int64_t& operator[](std::size_t i) { return coords[i]; }

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement scaled(int64_t k) const;
  bool is_zero() const;

  auto operator<=>(const GroupElement&) const = default;
  std::string str() const;
};

/// G = Z^free_rank x Z/torsion[0] x ... ; coordinates are ordered free first.
struct GroupSpec {
  int free_rank = 0;
  std::vector<int64_t> torsion;

  GroupSpec() = default;
  GroupSpec(int d, std::vector<int64_t> tors);

  static GroupSpec integers(int d) { return GroupSpec(d, {}); }
  static GroupSpec cyclic(int64_t n) { return GroupSpec(0, {n}); }

  std::size_t rank() const { return static_cast<std::size_t>(free_rank) + torsion.size(); }
  bool is_finite() const { return free_rank == 0; }

  /// Reduces torsion coordinates into [0, N_m). Idempotent.
  GroupElement canonical(GroupElement x) const;
  GroupElement zero() const { return GroupElement(std::vector<int64_t>(rank(), 0)); }
  /// Length check, then canonicalization.
  GroupElement element(std::vector<int64_t> coords) const;

  bool operator==(const GroupSpec&) const = default;
  std::string str() const;
};

/// Finitely supported Z-valued function on a GroupSpec. No zero coefficients
/// are stored and keys are canonical.
class FinMap {
 public:
  FinMap() = default;
  explicit FinMap(GroupSpec group) : group_(std::move(group)) {}
  FinMap(GroupSpec group, std::initializer_list<std::pair<GroupElement, long>> entries);

  static FinMap delta(const GroupSpec& group, const GroupElement& x, const Int& coeff = 1);
  static FinMap indicator(const GroupSpec& group, const std::vector<GroupElement>& points);

  const GroupSpec& group() const { return group_; }
  const std::map<GroupElement, Int>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  /// Accumulates coeff at x (canonicalized); zero results are erased.
  void add(const GroupElement& x, const Int& coeff);
  Int at(const GroupElement& x) const;
  Int sum() const;

  FinMap operator+(const FinMap& o) const;
  FinMap operator-(const FinMap& o) const;
  FinMap operator-() const;
  friend FinMap operator*(const Int& k, const FinMap& f);

  bool operator==(const FinMap& o) const = default;
  std::string str() const;

 private:
  GroupSpec group_;
  std::map<GroupElement, Int> entries_;
};

/// Z-valued function on G invariant under periods[i] * e_i on each free
/// coordinate; values are stored row-major over [p_1] x ... x [p_d] x [N_1] x ...
class PeriodicMap {
 public:
  PeriodicMap() = default;
  PeriodicMap(GroupSpec group, std::vector<int64_t> periods, std::vector<Int> values);

  static PeriodicMap constant(const GroupSpec& group, std::vector<int64_t> periods, const Int& c);
  static PeriodicMap uniform_period(const GroupSpec& group, int64_t q, const Int& c) {
    return constant(group, std::vector<int64_t>(static_cast<std::size_t>(group.free_rank), q), c);
  }
  static PeriodicMap from_function(const GroupSpec& group, std::vector<int64_t> periods,
                                   const std::function<Int(const GroupElement&)>& fn);

  const GroupSpec& group() const { return group_; }
  const std::vector<int64_t>& periods() const { return periods_; }
  const std::vector<Int>& values() const { return values_; }
  /// periods followed by torsion moduli.
  std::vector<int64_t> shape() const;
  std::size_t cell_count() const { return values_.size(); }

  /// Row-major index of the cell containing x.
  std::size_t index_of(const GroupElement& x) const;
  /// Representative of cell `index` inside the fundamental domain.
  GroupElement cell(std::size_t index) const;
  const Int& at(const GroupElement& x) const { return values_[index_of(x)]; }

  bool is_zero() const;
  /// Same function re-sampled over a finer lattice; each new period must be
  /// a multiple of the old one.
  PeriodicMap with_periods(std::vector<int64_t> periods) const;

  bool operator==(const PeriodicMap& o) const = default;

 private:
  GroupSpec group_;
  std::vector<int64_t> periods_;
  std::vector<Int> values_;
};

/// Periods that refine both arguments (coordinatewise lcm).
std::vector<int64_t> joint_periods(const std::vector<int64_t>& a, const std::vector<int64_t>& b);

/// Equality as functions on G, regardless of the period each is stored with.
bool same_function(const PeriodicMap& a, const PeriodicMap& b);

/// Quotient G / <w> with its explicit projection. A point x of G maps to
/// coordinates ((x V)_k mod moduli_k) for the kept columns k.
struct Quotient {
  GroupSpec source;
  GroupSpec target;
  IntMatrix V;
  std::vector<std::size_t> kept_columns;  // free columns first, then torsion columns
  std::vector<Int> moduli;                // 0 for free columns

  GroupElement project(const GroupElement& x) const;
};

Quotient quotient_by(const GroupSpec& group, const GroupElement& w);

FinMap convolve(const FinMap& f, const FinMap& g);
PeriodicMap convolve_periodic(const FinMap& f, const PeriodicMap& a);
FinMap dilate(const FinMap& f, int64_t r);

/// (d_h f)(x) = f(x + h) - f(x).
FinMap difference(const FinMap& f, const GroupElement& h);
PeriodicMap difference(const PeriodicMap& a, const GroupElement& h);

struct Pushforward {
  Quotient quotient;
  FinMap image;
};

/// Sums f over the cosets of <w>. Requires w to have a non-zero free part.
Pushforward pushforward(const FinMap& f, const GroupElement& w);

Int l1_norm(const FinMap& f);

struct UnitTerm {
  GroupElement point;
  RationalMod1 sign;  // 0 for +1, 1/2 for -1

  bool operator==(const UnitTerm&) const = default;
  auto operator<=>(const UnitTerm&) const = default;
};

/// Expands f as a signed sum of l1_norm(f) unit deltas.
std::vector<UnitTerm> unit_expansion(const FinMap& f);

}  // namespace tiling
