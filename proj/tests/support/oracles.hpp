#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the code under test except for plain data types (GroupSpec, FinMap,
// PeriodicMap, RationalMod1) needed to express inputs and outputs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "tiling/group.hpp"
#include "tiling/qz_linear.hpp"

namespace oracle {

using tiling::FinMap;
using tiling::GroupElement;
using tiling::GroupSpec;
using tiling::Int;
using tiling::PeriodicMap;
using tiling::RationalMod1;

// ---------------------------------------------------------------------------
// Random generation

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}

  int64_t uniform(int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(eng); }
  bool coin() { return uniform(0, 1) == 1; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int64_t>(v.size()) - 1))];
  }
};

inline GroupElement random_element(Rng& rng, const GroupSpec& g, int64_t radius) {
  std::vector<int64_t> c;
  for (int i = 0; i < g.free_rank; ++i) c.push_back(rng.uniform(-radius, radius));
  for (int64_t n : g.torsion) c.push_back(rng.uniform(0, n - 1));
  return GroupElement(c);
}

/// Up to `support` random points with coefficients in [-cmax, cmax] (zeros dropped).
inline FinMap random_finmap(Rng& rng, const GroupSpec& g, int support, int64_t cmax, int64_t radius) {
  FinMap f(g);
  for (int i = 0; i < support; ++i) f.add(g.canonical(random_element(rng, g, radius)), Int(rng.uniform(-cmax, cmax)));
  return f;
}

/// Random non-zero f whose l1 norm is at most `l1`.
inline FinMap random_finmap_l1(Rng& rng, const GroupSpec& g, int64_t l1, int64_t radius) {
  for (;;) {
    FinMap f(g);
    int64_t budget = rng.uniform(1, l1);
    while (budget > 0) {
      const int64_t c = rng.uniform(1, budget);
      budget -= c;
      f.add(g.canonical(random_element(rng, g, radius)), Int(rng.coin() ? c : -c));
    }
    int64_t norm = 0;
    for (const auto& [x, c] : f.entries()) norm += std::abs(c.get_si());
    if (!f.is_zero() && norm <= l1) return f;
  }
}

inline RationalMod1 random_rational(Rng& rng, int64_t max_den) {
  const int64_t den = rng.uniform(1, max_den);
  return RationalMod1::of(rng.uniform(0, den - 1), den);
}

// ---------------------------------------------------------------------------
// Group arithmetic from first principles

inline std::vector<int64_t> reduce_coords(const GroupSpec& g, std::vector<int64_t> c) {
  for (std::size_t m = 0; m < g.torsion.size(); ++m) {
    int64_t& v = c[static_cast<std::size_t>(g.free_rank) + m];
    v = ((v % g.torsion[m]) + g.torsion[m]) % g.torsion[m];
  }
  return c;
}

/// Value of a periodic map computed from its raw row-major storage.
inline Int periodic_value(const PeriodicMap& a, const std::vector<int64_t>& x) {
  std::vector<int64_t> shape = a.periods();
  for (int64_t n : a.group().torsion) shape.push_back(n);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const int64_t r = ((x[i] % shape[i]) + shape[i]) % shape[i];
    idx = idx * static_cast<std::size_t>(shape[i]) + static_cast<std::size_t>(r);
  }
  return a.values()[idx];
}

/// Every point of the fundamental domain [p_1] x ... x [N_1] x ..., row-major.
inline std::vector<std::vector<int64_t>> domain_points(const PeriodicMap& a) {
  std::vector<int64_t> shape = a.periods();
  for (int64_t n : a.group().torsion) shape.push_back(n);
  std::vector<std::vector<int64_t>> pts{{}};
  for (int64_t s : shape) {
    std::vector<std::vector<int64_t>> next;
    for (const auto& p : pts) {
      for (int64_t v = 0; v < s; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(q);
      }
    }
    pts = std::move(next);
  }
  return pts;
}

/// (f * a)(x) = sum_y f(y) a(x - y), directly from the definition.
inline Int convolve_at(const FinMap& f, const PeriodicMap& a, const std::vector<int64_t>& x) {
  Int acc = 0;
  for (const auto& [y, c] : f.entries()) {
    std::vector<int64_t> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    acc += c * periodic_value(a, d);
  }
  return acc;
}

/// Convolution of two finitely supported maps by the double sum.
inline std::map<std::vector<int64_t>, Int> convolve_finite(const FinMap& f, const FinMap& g) {
  std::map<std::vector<int64_t>, Int> out;
  for (const auto& [x, a] : f.entries()) {
    for (const auto& [y, b] : g.entries()) {
      std::vector<int64_t> s(x.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = x[i] + y[i];
      out[reduce_coords(f.group(), s)] += a * b;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline std::map<std::vector<int64_t>, Int> as_map(const FinMap& f) {
  std::map<std::vector<int64_t>, Int> out;
  for (const auto& [x, c] : f.entries()) out[x.coords] = c;
  return out;
}

// ---------------------------------------------------------------------------
// Exact cyclotomic zero test, via the Moebius product formula
// Phi_L = prod_{d | L} (x^d - 1)^{mu(L/d)}.

using Poly = std::vector<Int>;

inline int moebius(int64_t n) {
  int mu = 1;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Remainder of a modulo the monic polynomial m.
inline Poly poly_rem(Poly a, const Poly& m) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const Int lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] -= lead * m[i];
    a.pop_back();
  }
  return a;
}

/// Exact quotient a / m for monic m dividing a.
inline Poly poly_div(Poly a, const Poly& m) {
  const std::size_t dm = m.size() - 1;
  Poly q(a.size() - dm);
  for (std::size_t k = a.size(); k-- > dm;) {
    const Int lead = a[k];
    q[k - dm] = lead;
    for (std::size_t i = 0; i <= dm; ++i) a[k - dm + i] -= lead * m[i];
  }
  return q;
}

inline Poly x_pow_minus_one(int64_t d) {
  Poly p(static_cast<std::size_t>(d) + 1);
  p[0] = -1;
  p[static_cast<std::size_t>(d)] = 1;
  return p;
}

inline Poly cyclotomic(int64_t L) {
  Poly num{1};
  std::vector<Poly> dens;
  for (int64_t d = 1; d <= L; ++d) {
    if (L % d != 0) continue;
    const int mu = moebius(L / d);
    if (mu == 1) num = poly_mul(num, x_pow_minus_one(d));
    if (mu == -1) dens.push_back(x_pow_minus_one(d));
  }
  for (const auto& d : dens) num = poly_div(num, d);
  return num;
}

/// sum_i coeffs[i] * zeta_L^{exps[i]} == 0.
inline bool weighted_zero(const std::vector<int64_t>& exps, const std::vector<Int>& coeffs, int64_t L) {
  Poly p(static_cast<std::size_t>(L), Int(0));
  for (std::size_t i = 0; i < exps.size(); ++i) p[static_cast<std::size_t>(((exps[i] % L) + L) % L)] += coeffs[i];
  const Poly r = poly_rem(p, cyclotomic(L));
  return std::all_of(r.begin(), r.end(), [](const Int& c) { return c == 0; });
}

inline int64_t level_of(const std::vector<RationalMod1>& thetas) {
  int64_t L = 1;
  for (const auto& t : thetas) L = std::lcm(L, t.den().get_si());
  return L;
}

inline bool roots_sum_zero(const std::vector<RationalMod1>& thetas) {
  const int64_t L = level_of(thetas);
  std::vector<int64_t> exps;
  for (const auto& t : thetas) exps.push_back(t.num().get_si() * (L / t.den().get_si()));
  return weighted_zero(exps, std::vector<Int>(thetas.size(), Int(1)), L);
}

inline int64_t primorial(int64_t k) {
  int64_t m = 1;
  for (int64_t p = 2; p <= k; ++p) {
    bool prime = true;
    for (int64_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (prime) m *= p;
  }
  return m;
}

/// Omega_k by exhausting every exponent vector mod M_k with first entry 0.
inline std::vector<std::vector<RationalMod1>> brute_minimal_tuples(int k) {
  const int64_t M = primorial(k);
  std::vector<std::vector<RationalMod1>> out;
  std::vector<int64_t> e(static_cast<std::size_t>(k), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k) {
      std::vector<RationalMod1> t;
      for (int64_t v : e) t.push_back(RationalMod1::of(v, M));
      if (!roots_sum_zero(t)) return;
      for (uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
        std::vector<RationalMod1> sub;
        for (int i = 0; i < k; ++i) {
          if (mask & (1u << i)) sub.push_back(t[static_cast<std::size_t>(i)]);
        }
        if (roots_sum_zero(sub)) return;
      }
      out.push_back(t);
      return;
    }
    for (int64_t v = 0; v < M; ++v) {
      e[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1);
    }
  };
  rec(1);
  std::sort(out.begin(), out.end());
  return out;
}

/// For G = Z/N: does some character k/N kill f-hat? Scans all N characters.
inline bool cyclic_character_scan(const FinMap& f, int64_t N) {
  for (int64_t k = 0; k < N; ++k) {
    std::vector<int64_t> exps;
    std::vector<Int> coeffs;
    for (const auto& [x, c] : f.entries()) {
      exps.push_back(-k * x[0]);
      coeffs.push_back(c);
    }
    if (weighted_zero(exps, coeffs, N)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Z^2 multi-tiling by exhaustion

struct Tap {
  int64_t dx, dy, c;
};

inline std::vector<Tap> taps(const FinMap& f) {
  std::vector<Tap> t;
  for (const auto& [y, c] : f.entries()) t.push_back({y[0], y[1], c.get_si()});
  return t;
}

inline int64_t g_value(const PeriodicMap& g, int64_t x, int64_t y) { return periodic_value(g, {x, y}).get_si(); }

/// Lexicographically least q-periodic 0/1 solution (bits[x*q+y]) by trying
/// all 2^(q^2) grids in lexicographic order.
inline std::optional<std::vector<uint8_t>> brute_torus(const FinMap& f, const PeriodicMap& g, int64_t q) {
  const auto t = taps(f);
  const int64_t n = q * q;
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) {
    std::vector<uint8_t> bits(static_cast<std::size_t>(n));
    for (int64_t i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (m >> (n - 1 - i)) & 1;
    auto at = [&](int64_t x, int64_t y) {
      return bits[static_cast<std::size_t>(((x % q + q) % q) * q + ((y % q + q) % q))];
    };
    bool ok = true;
    for (int64_t x = 0; x < q && ok; ++x) {
      for (int64_t y = 0; y < q && ok; ++y) {
        int64_t s = 0;
        for (const auto& tp : t) s += tp.c * at(x - tp.dx, y - tp.dy);
        ok = s == g_value(g, x, y);
      }
    }
    if (ok) return bits;
  }
  return std::nullopt;
}

/// True iff no 0/1 assignment satisfies the constraints on [-n, n]^2.
/// Only the cells that some constraint reads are enumerated.
inline bool brute_box_refute(const FinMap& f, const PeriodicMap& g, int64_t n) {
  const auto t = taps(f);
  std::map<std::pair<int64_t, int64_t>, std::size_t> var;
  for (int64_t x = -n; x <= n; ++x) {
    for (int64_t y = -n; y <= n; ++y) {
      for (const auto& tp : t) var.try_emplace({x - tp.dx, y - tp.dy}, var.size());
    }
  }
  if (var.size() > 24) throw std::runtime_error("brute_box_refute: instance too large");
  std::vector<uint8_t> bits(var.size());
  for (uint64_t m = 0; m < (uint64_t{1} << var.size()); ++m) {
    for (std::size_t i = 0; i < var.size(); ++i) bits[i] = (m >> i) & 1;
    bool ok = true;
    for (int64_t x = -n; x <= n && ok; ++x) {
      for (int64_t y = -n; y <= n && ok; ++y) {
        int64_t s = 0;
        for (const auto& tp : t) s += tp.c * bits[var.at({x - tp.dx, y - tp.dy})];
        ok = s == g_value(g, x, y);
      }
    }
    if (ok) return false;
  }
  return true;
}

}  // namespace oracle
