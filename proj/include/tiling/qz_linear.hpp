#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tiling/integer.hpp"

namespace tiling {

/// An element of Q/Z, stored in lowest terms with 0 <= num < den.
class RationalMod1 {
 public:
  RationalMod1() : num_(0), den_(1) {}
  RationalMod1(Int num, Int den);
  static RationalMod1 of(int64_t num, int64_t den) { return RationalMod1(Int(num), Int(den)); }
  static RationalMod1 half() { return of(1, 2); }

  /// Parses "p/q" or "p".
  static RationalMod1 parse(std::string_view text);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return num_.get_d() / den_.get_d(); }
  std::string str() const;

  RationalMod1 operator+(const RationalMod1& o) const;
  RationalMod1 operator-(const RationalMod1& o) const;
  RationalMod1 operator-() const;
  RationalMod1& operator+=(const RationalMod1& o) { return *this = *this + o; }
  RationalMod1& operator-=(const RationalMod1& o) { return *this = *this - o; }
  friend RationalMod1 operator*(const Int& k, const RationalMod1& x);

  bool operator==(const RationalMod1& o) const { return num_ == o.num_ && den_ == o.den_; }
  /// Orders by the representative in [0, 1).
  std::strong_ordering operator<=>(const RationalMod1& o) const;

 private:
  Int num_;
  Int den_;
};

/// Dense rectangular matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& k);
  void negate_row(std::size_t r);

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Exact determinant (fraction-free Bareiss elimination). Square matrices only.
Int determinant(const IntMatrix& a);

/// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /// Diagonal entries of D, min(rows, cols) of them.
  std::vector<Int> diagonal() const;
  std::size_t rank() const;
};

/// Pivots on the smallest non-zero absolute value, ties broken row-major.
SnfDecomposition smith_normal_form(const IntMatrix& a);

/// Solves A x = b over Q/Z. Returns nullopt when the system is inconsistent.
/// Free directions are set to 0 and each divided coordinate takes the
/// smallest non-negative lift, so the solution is deterministic.
std::optional<std::vector<RationalMod1>> solve_qz(const IntMatrix& a, std::span<const RationalMod1> b);

/// Exact check A x = b in (Q/Z)^rows.
bool verify_qz(const IntMatrix& a, std::span<const RationalMod1> x, std::span<const RationalMod1> b);

}  // namespace tiling
