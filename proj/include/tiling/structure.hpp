#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tiling/group.hpp"

namespace tiling {

struct Vec2 {
  int64_t x = 0;
  int64_t y = 0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(int64_t k) const { return {x * k, y * k}; }
  bool operator==(const Vec2&) const = default;
  GroupElement element() const { return GroupElement{x, y}; }
};

/// (a, b) ^ (c, d) = ad - bc.
int64_t wedge(Vec2 u, Vec2 v);

bool is_primitive(Vec2 w);

/// Complement w* with w ^ w* = 1. Among the candidates w* + k w the one with
/// 0 <= <w*, w> < |w|^2 is returned.
Vec2 complement(Vec2 w);

// ---------------------------------------------------------------------------
// Dilation

struct DilationResult {
  int64_t r = 1;
  bool pass = false;
};

struct DilationReport {
  std::vector<int64_t> periods;  // joint period of a and g used for every check
  std::vector<DilationResult> results;

  bool all_pass() const;
};

/// Checks (tau_r f) * a = g for every r in r_list after confirming f * a = g.
/// Each r must be 1 mod q.
DilationReport dilation_check(const FinMap& f, const PeriodicMap& a, const PeriodicMap& g, int64_t q,
                              const std::vector<int64_t>& r_list);

/// Candidate moduli lcm(base, product of primes <= m) for m = 1 .. max(l1, 2) + 2,
/// duplicates removed, in increasing order.
std::vector<int64_t> dilation_ladder(int64_t base, int64_t l1);

/// First q in the ladder for which r = 1 + q, 1 + 2q, 1 + 3q all pass.
std::optional<int64_t> find_dilation_modulus(const FinMap& f, const PeriodicMap& a, const PeriodicMap& g,
                                             const std::vector<int64_t>& ladder);

// ---------------------------------------------------------------------------
// Slicing

/// Restriction of f to the coset x + <w>.
FinMap slice(const FinMap& f, Vec2 x, Vec2 w);

/// All non-zero slices of f along w, keyed by the coset label w ^ y.
std::map<int64_t, FinMap> slices(const FinMap& f, Vec2 w);

/// Period lattice of a Z^2-periodic map in Hermite form: spanned by
/// (a, 0) and (b, c) with a, c > 0 and 0 <= b < a.
struct PeriodLattice {
  int64_t a = 1;
  int64_t b = 0;
  int64_t c = 1;

  int64_t index() const { return a * c; }
  bool contains(Vec2 t) const;
  bool operator==(const PeriodLattice&) const = default;
};

PeriodLattice period_lattice(const PeriodicMap& m);

struct SliceReport {
  int64_t coset = 0;  // w ^ y for y in the coset
  FinMap slice;
  PeriodicMap convolution;
  PeriodLattice lattice;
};

/// For each coset slice of f along w, the exact convolution with phi and its
/// period lattice. phi must satisfy phi(x + q w) = phi(x).
std::vector<SliceReport> slicing_periodicity_check(const FinMap& f, const PeriodicMap& phi, Vec2 w, int64_t q);

// ---------------------------------------------------------------------------
// Finite windows

/// Values on the rectangle [x0, x1] x [y0, y1]; access outside throws.
template <typename T>
class Window2D {
 public:
  Window2D() = default;
  Window2D(int64_t x0, int64_t x1, int64_t y0, int64_t y1, std::vector<T> values)
      : x0_(x0), x1_(x1), y0_(y0), y1_(y1), values_(std::move(values)) {
    if (x1 < x0 || y1 < y0) throw InputError("Window2D: empty rectangle");
    if (values_.size() != static_cast<std::size_t>(width() * height())) {
      throw InputError("Window2D: value count does not match the rectangle");
    }
  }

  template <typename Fn>
  static Window2D generate(int64_t x0, int64_t x1, int64_t y0, int64_t y1, Fn&& fn) {
    std::vector<T> values;
    values.reserve(static_cast<std::size_t>((x1 - x0 + 1) * (y1 - y0 + 1)));
    for (int64_t x = x0; x <= x1; ++x) {
      for (int64_t y = y0; y <= y1; ++y) values.push_back(fn(x, y));
    }
    return Window2D(x0, x1, y0, y1, std::move(values));
  }

  int64_t x0() const { return x0_; }
  int64_t x1() const { return x1_; }
  int64_t y0() const { return y0_; }
  int64_t y1() const { return y1_; }
  int64_t width() const { return x1_ - x0_ + 1; }
  int64_t height() const { return y1_ - y0_ + 1; }
  bool contains(int64_t x, int64_t y) const { return x0_ <= x && x <= x1_ && y0_ <= y && y <= y1_; }
  const std::vector<T>& values() const { return values_; }

  const T& at(int64_t x, int64_t y) const {
    if (!contains(x, y)) {
      throw std::out_of_range("Window2D: (" + std::to_string(x) + "," + std::to_string(y) + ") outside window");
    }
    return values_[static_cast<std::size_t>((x - x0_) * height() + (y - y0_))];
  }

  bool operator==(const Window2D&) const = default;

 private:
  int64_t x0_ = 0;
  int64_t x1_ = -1;
  int64_t y0_ = 0;
  int64_t y1_ = -1;
  std::vector<T> values_;
};

/// Finite Cesaro mean (1/N) sum_{n=1..N} a(x + n v), an approximation of the
/// averaging projection along v. The result lives on the points whose whole
/// orbit segment stays inside the window, a sub-rectangle of the input.
Window2D<Rational> cesaro_average(const Window2D<Int>& a, Vec2 v, int64_t n);

}  // namespace tiling
