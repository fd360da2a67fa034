#include "tiling/qz_linear.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace tiling {

// ---------------------------------------------------------------------------
// RationalMod1

RationalMod1::RationalMod1(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw InputError("RationalMod1: zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  mpz_fdiv_r(num_.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  Int g = gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

RationalMod1 RationalMod1::parse(std::string_view text) {
  auto slash = text.find('/');
  auto parse_int = [](std::string_view s) {
    Int v;
    if (s.empty() || v.set_str(std::string(s), 10) != 0) {
      throw InputError("malformed rational mod 1: '" + std::string(s) + "'");
    }
    return v;
  };
  if (slash == std::string_view::npos) return RationalMod1(parse_int(text), Int(1));
  return RationalMod1(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string RationalMod1::str() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

RationalMod1 RationalMod1::operator+(const RationalMod1& o) const {
  return RationalMod1(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalMod1 RationalMod1::operator-(const RationalMod1& o) const {
  return RationalMod1(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalMod1 RationalMod1::operator-() const { return RationalMod1(-num_, den_); }

RationalMod1 operator*(const Int& k, const RationalMod1& x) { return RationalMod1(k * x.num_, x.den_); }

std::strong_ordering RationalMod1::operator<=>(const RationalMod1& o) const {
  int c = cmp(num_ * o.den_, o.num_ * den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("IntMatrix: ragged initializer");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw InputError("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Int> SnfDecomposition::diagonal() const {
  std::vector<Int> d;
  const std::size_t k = std::min(D.rows(), D.cols());
  d.reserve(k);
  for (std::size_t i = 0; i < k; ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SnfDecomposition::rank() const {
  std::size_t r = 0;
  for (const Int& d : diagonal()) r += (d != 0);
  return r;
}

namespace {

bool abs_less(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }

// Locates the smallest non-zero |entry| in the trailing block starting at (t, t).
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < d.rows(); ++i) {
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Int& v = d(i, j);
      if (v == 0) continue;
      if (!found || abs_less(v, best)) {
        found = true;
        best = abs(v);
        pi = i;
        pj = j;
      }
    }
  }
  return found;
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t pi = 0;
    std::size_t pj = 0;
    if (!find_pivot(d, t, pi, pj)) break;
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    d.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      // Clear column t below the pivot.
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) dirty = true;
      }
      // Clear row t right of the pivot.
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder survived; move the smallest entry of row/column t to the pivot.
        std::size_t bi = t;
        std::size_t bj = t;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (d(i, t) != 0 && abs_less(d(i, t), d(bi, bj))) {
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (d(t, j) != 0 && abs_less(d(t, j), d(bi, bj))) {
            bi = t;
            bj = j;
          }
        }
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);
        continue;
      }
      // Divisibility chain: fold in any trailing row the pivot fails to divide.
      bool folded = false;
      for (std::size_t i = t + 1; i < m && !folded; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            d.add_row_multiple(t, i, Int(1));
            u.add_row_multiple(t, i, Int(1));
            folded = true;
            break;
          }
        }
      }
      if (!folded) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return SnfDecomposition{std::move(u), std::move(d), std::move(v)};
}

// ---------------------------------------------------------------------------
// Q/Z systems

namespace {

RationalMod1 dot_mod1(const IntMatrix& a, std::size_t row, std::span<const RationalMod1> x) {
  RationalMod1 acc;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (a(row, j) != 0) acc += a(row, j) * x[j];
  }
  return acc;
}

}  // namespace

std::optional<std::vector<RationalMod1>> solve_qz(const IntMatrix& a, std::span<const RationalMod1> b) {
  if (b.size() != a.rows()) throw InputError("solve_qz: right-hand side has wrong length");
  const SnfDecomposition snf = smith_normal_form(a);
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  std::vector<RationalMod1> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = dot_mod1(snf.U, i, b);

  std::vector<RationalMod1> y(n);
  for (std::size_t i = 0; i < m; ++i) {
    const Int di = (i < n) ? snf.D(i, i) : Int(0);
    if (di == 0) {
      if (!c[i].is_zero()) return std::nullopt;
      continue;
    }
    y[i] = RationalMod1(c[i].num(), c[i].den() * di);
  }

  std::vector<RationalMod1> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = dot_mod1(snf.V, j, y);
  return x;
}

bool verify_qz(const IntMatrix& a, std::span<const RationalMod1> x, std::span<const RationalMod1> b) {
  if (x.size() != a.cols() || b.size() != a.rows()) throw InputError("verify_qz: dimension mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (dot_mod1(a, i, x) != b[i]) return false;
  }
  return true;
}

}  // namespace tiling
