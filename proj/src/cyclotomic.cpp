#include "tiling/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>
#include <tuple>

namespace tiling {

namespace {

// Absolute slack for floating-point pre-filters. A sum that is exactly zero
// evaluates to O(1e-13) here; anything larger than this is certainly non-zero.
constexpr double kFloatZero = 1e-6;

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

// Divides a by the monic polynomial b; the division must be exact.
IntPoly exact_divide_monic(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) throw std::logic_error("exact_divide_monic: degree too small");
  IntPoly q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    const Int c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (a[i] != 0) throw std::logic_error("exact_divide_monic: non-zero remainder");
  }
  return q;
}

struct Trig {
  std::vector<double> re;
  std::vector<double> im;
};

std::shared_ptr<const Trig> trig_table(int64_t modulus) {
  static std::map<int64_t, std::shared_ptr<const Trig>> cache;
  std::lock_guard lock(cache_mutex());
  auto& slot = cache[modulus];
  if (!slot) {
    auto t = std::make_shared<Trig>();
    t->re.resize(static_cast<std::size_t>(modulus));
    t->im.resize(static_cast<std::size_t>(modulus));
    for (int64_t j = 0; j < modulus; ++j) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(modulus);
      t->re[static_cast<std::size_t>(j)] = std::cos(a);
      t->im[static_cast<std::size_t>(j)] = std::sin(a);
    }
    slot = std::move(t);
  }
  return slot;
}

}  // namespace

int64_t euler_phi(int64_t n) {
  if (n < 1) throw InputError("euler_phi: argument must be positive");
  int64_t result = n;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

IntPoly cyclotomic_poly(int64_t level) {
  if (level < 1) throw InputError("cyclotomic_poly: level must be >= 1");
  static std::map<int64_t, IntPoly> cache;
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache.find(level); it != cache.end()) return it->second;
  }
  IntPoly p(static_cast<std::size_t>(level) + 1);
  p[0] = -1;
  p[static_cast<std::size_t>(level)] = 1;
  for (int64_t d = 1; d < level; ++d) {
    if (level % d == 0) p = exact_divide_monic(std::move(p), cyclotomic_poly(d));
  }
  std::lock_guard lock(cache_mutex());
  cache.emplace(level, p);
  return p;
}

IntPoly reduce_mod_cyclotomic(IntPoly p, int64_t level) {
  const IntPoly phi = cyclotomic_poly(level);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    const Int c = p[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] -= c * phi[j];
  }
  p.resize(deg);
  return p;
}

// ---------------------------------------------------------------------------
// CycElement

CycElement::CycElement(int64_t level) : level_(level), coeffs_(static_cast<std::size_t>(euler_phi(level))) {}

CycElement CycElement::monomial(int64_t exponent, int64_t level) {
  IntPoly p(static_cast<std::size_t>(level));
  p[static_cast<std::size_t>(floor_mod(exponent, level))] = 1;
  CycElement e(level);
  e.coeffs_ = reduce_mod_cyclotomic(std::move(p), level);
  return e;
}

CycElement CycElement::from_counts(std::span<const Int> counts, int64_t level) {
  IntPoly p(static_cast<std::size_t>(level));
  for (std::size_t j = 0; j < counts.size(); ++j) {
    p[static_cast<std::size_t>(floor_mod(static_cast<int64_t>(j), level))] += counts[j];
  }
  CycElement e(level);
  e.coeffs_ = reduce_mod_cyclotomic(std::move(p), level);
  return e;
}

bool CycElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Int& c) { return c == 0; });
}

CycElement CycElement::operator+(const CycElement& o) const {
  if (o.level_ != level_) throw InputError("CycElement: level mismatch");
  CycElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

CycElement CycElement::operator-(const CycElement& o) const {
  if (o.level_ != level_) throw InputError("CycElement: level mismatch");
  CycElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

// ---------------------------------------------------------------------------
// Vanishing sums

int64_t common_level(std::span<const RationalMod1> thetas) {
  Int level = 1;
  for (const auto& t : thetas) mpz_lcm(level.get_mpz_t(), level.get_mpz_t(), t.den().get_mpz_t());
  if (!level.fits_slong_p()) throw CapacityError("common_level: lcm of denominators exceeds 64 bits");
  return level.get_si();
}

namespace {

// Levels up to this bound use the dense reduction modulo Phi_L.
constexpr int64_t kDenseLevelLimit = 512;

using SparseSum = std::map<int64_t, Int>;  // exponent mod L -> coefficient

int64_t smallest_prime_factor(int64_t n) {
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n;
}

int64_t inverse_mod(int64_t a, int64_t m) {
  int64_t r0 = m, r1 = floor_mod(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
  }
  return floor_mod(s0, m);
}

// Exact zero test of sum_t c_t zeta_L^t that never forms Phi_L. With p the
// smallest prime of L:
//  - p^2 | L: 1, zeta_L, ..., zeta_L^{p-1} is a basis over Q(zeta_{L/p}), so
//    every residue class of exponents mod p must vanish on its own;
//  - p || L, m = L/p: zeta_L^t = zeta_p^{u} zeta_m^{v} by CRT and the only
//    relation of the zeta_p^u over Q(zeta_m) is their plain sum, so the sum
//    vanishes iff all p coefficient blocks A_u in Z[zeta_m] coincide.
bool sparse_vanishes(SparseSum terms, int64_t level) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  if (terms.empty()) return true;
  if (level == 1) return false;
  if (level <= kDenseLevelLimit) {
    std::vector<Int> counts(static_cast<std::size_t>(level));
    for (const auto& [t, c] : terms) counts[static_cast<std::size_t>(t)] += c;
    return CycElement::from_counts(counts, level).is_zero();
  }
  const int64_t p = smallest_prime_factor(level);
  const int64_t m = level / p;
  std::vector<SparseSum> blocks(static_cast<std::size_t>(p));
  if (m % p == 0) {
    for (const auto& [t, c] : terms) blocks[static_cast<std::size_t>(t % p)][t / p] += c;
    return std::all_of(blocks.begin(), blocks.end(), [&](const SparseSum& b) { return sparse_vanishes(b, m); });
  }
  // 1/L = x/p + y/m with x = m^{-1} mod p and y = p^{-1} mod m.
  const Int x = inverse_mod(m, p);
  const Int y = inverse_mod(p, m);
  for (const auto& [t, c] : terms) {
    const Int tt = t;
    const int64_t u = Int((tt * x) % p).get_si();
    const int64_t v = Int((tt * y) % m).get_si();
    blocks[static_cast<std::size_t>(u)][v] += c;
  }
  for (std::size_t u = 1; u < blocks.size(); ++u) {
    SparseSum diff = blocks[u];
    for (const auto& [v, c] : blocks[0]) diff[v] -= c;
    if (!sparse_vanishes(std::move(diff), m)) return false;
  }
  return true;
}

}  // namespace

bool sum_roots_is_zero(std::span<const RationalMod1> thetas) {
  const int64_t level = common_level(thetas);
  SparseSum terms;
  for (const auto& t : thetas) {
    const Int e = t.num() * (level / to_int64(t.den()));
    terms[e.get_si()] += 1;
  }
  return sparse_vanishes(std::move(terms), level);
}

bool weighted_sum_is_zero(std::span<const int64_t> exponents, std::span<const int64_t> weights, int64_t modulus) {
  if (exponents.size() != weights.size()) throw InputError("weighted_sum_is_zero: length mismatch");
  if (modulus < 1) throw InputError("weighted_sum_is_zero: modulus must be positive");
  SparseSum terms;
  for (std::size_t i = 0; i < exponents.size(); ++i) terms[floor_mod(exponents[i], modulus)] += weights[i];
  return sparse_vanishes(std::move(terms), modulus);
}

int64_t mann_bound(int k) {
  if (k < 1) throw InputError("mann_bound: k must be >= 1");
  int64_t m = 1;
  for (int p = 2; p <= k; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d) prime = prime && (p % d != 0);
    if (prime) m *= p;
  }
  return m;
}

namespace {

// True when some sub-multiset (0 <= take_i <= mult_i, neither empty nor full)
// of the weighted sum vanishes.
bool has_vanishing_proper_subsum(std::span<const int64_t> exps, std::span<const int64_t> mult, int64_t modulus,
                                 const Trig& trig) {
  const std::size_t s = exps.size();
  std::vector<int64_t> take(s, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < s && take[i] == mult[i]) take[i++] = 0;
    if (i == s) return false;
    ++take[i];
    bool full = true;
    for (std::size_t j = 0; j < s; ++j) full = full && take[j] == mult[j];
    if (full) return false;  // the full multiset is the last vector in this order
    double re = 0;
    double im = 0;
    for (std::size_t j = 0; j < s; ++j) {
      re += static_cast<double>(take[j]) * trig.re[static_cast<std::size_t>(exps[j])];
      im += static_cast<double>(take[j]) * trig.im[static_cast<std::size_t>(exps[j])];
    }
    if (std::hypot(re, im) > kFloatZero) continue;
    if (weighted_sum_is_zero(exps, take, modulus)) return true;
  }
}

struct WeightedSearch {
  std::span<const int64_t> mult;
  int64_t modulus;
  const Trig& trig;
  std::vector<int64_t> suffix_weight;
  std::vector<int64_t> values;
  std::vector<std::vector<int64_t>> out;

  void run(std::size_t i, double re, double im) {
    const std::size_t s = mult.size();
    if (i == s) {
      if (std::hypot(re, im) > kFloatZero) return;
      if (!weighted_sum_is_zero(values, mult, modulus)) return;
      if (has_vanishing_proper_subsum(values, mult, modulus, trig)) return;
      out.push_back(values);
      return;
    }
    if (std::hypot(re, im) > static_cast<double>(suffix_weight[i]) + kFloatZero) return;
    const auto w = static_cast<double>(mult[i]);
    for (int64_t v = 0; v < modulus; ++v) {
      values[i] = v;
      run(i + 1, re + w * trig.re[static_cast<std::size_t>(v)], im + w * trig.im[static_cast<std::size_t>(v)]);
    }
  }
};

}  // namespace

std::vector<std::vector<int64_t>> minimal_weighted_assignments(std::span<const int64_t> multiplicities,
                                                               int64_t modulus) {
  if (multiplicities.empty()) return {};
  for (int64_t m : multiplicities) {
    if (m < 1) throw InputError("minimal_weighted_assignments: multiplicities must be positive");
  }
  if (modulus < 1) throw InputError("minimal_weighted_assignments: modulus must be positive");
  auto trig = trig_table(modulus);
  WeightedSearch search{multiplicities, modulus, *trig, {}, {}, {}};
  const std::size_t s = multiplicities.size();
  search.suffix_weight.assign(s + 1, 0);
  for (std::size_t i = s; i-- > 0;) search.suffix_weight[i] = search.suffix_weight[i + 1] + multiplicities[i];
  search.values.assign(s, 0);
  const auto w0 = static_cast<double>(multiplicities[0]);
  search.run(1, w0, 0.0);
  return std::move(search.out);
}

std::vector<MinimalTuple> enumerate_minimal_tuples(int k, int cap) {
  if (k < 2) throw InputError("enumerate_minimal_tuples: k must be >= 2");
  if (k > cap) {
    throw CapacityError("enumerate_minimal_tuples: k = " + std::to_string(k) + " exceeds capacity " +
                        std::to_string(cap));
  }
  const int64_t modulus = mann_bound(k);
  auto trig = trig_table(modulus);
  const std::vector<int64_t> ones(static_cast<std::size_t>(k), 1);
  std::set<std::vector<int64_t>> ordered;

  // Multisets 0 = e_1 <= e_2 <= ... <= e_k, pruned on the partial sum.
  std::vector<int64_t> e(static_cast<std::size_t>(k), 0);
  auto dfs = [&](auto&& self, std::size_t i, double re, double im) -> void {
    const auto remaining = static_cast<double>(static_cast<std::size_t>(k) - i);
    if (i == static_cast<std::size_t>(k)) {
      if (std::hypot(re, im) > kFloatZero) return;
      if (!weighted_sum_is_zero(e, ones, modulus)) return;
      if (has_vanishing_proper_subsum(e, ones, modulus, *trig)) return;
      std::vector<int64_t> perm = e;
      do {
        if (perm[0] == 0) ordered.insert(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    if (std::hypot(re, im) > remaining + kFloatZero) return;
    for (int64_t v = e[i - 1]; v < modulus; ++v) {
      e[i] = v;
      self(self, i + 1, re + trig->re[static_cast<std::size_t>(v)], im + trig->im[static_cast<std::size_t>(v)]);
    }
  };
  dfs(dfs, 1, 1.0, 0.0);

  std::vector<MinimalTuple> out;
  out.reserve(ordered.size());
  for (const auto& exps : ordered) {
    MinimalTuple t;
    for (int64_t x : exps) t.entries.push_back(RationalMod1::of(x, modulus));
    out.push_back(std::move(t));
  }
  return out;
}

const std::vector<Int>& retraction_table(int64_t level) {
  if (level < 1) throw InputError("retraction_table: level must be >= 1");
  static std::map<int64_t, std::unique_ptr<const std::vector<Int>>> cache;
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache.find(level); it != cache.end()) return *it->second;
  }
  const IntPoly phi = cyclotomic_poly(level);
  const std::size_t deg = phi.size() - 1;
  auto table = std::make_unique<std::vector<Int>>(static_cast<std::size_t>(level));
  // cur holds x^t mod Phi_L; multiply by x and reduce once per step.
  IntPoly cur(deg + 1);
  cur[0] = 1;
  for (int64_t t = 0; t < level; ++t) {
    (*table)[static_cast<std::size_t>(t)] = cur[0];
    cur.insert(cur.begin(), Int(0));
    const Int top = cur[deg];
    if (top != 0) {
      for (std::size_t j = 0; j <= deg; ++j) cur[j] -= top * phi[j];
    }
    cur.resize(deg + 1);
    cur[deg] = 0;
  }
  std::lock_guard lock(cache_mutex());
  auto [it, inserted] = cache.emplace(level, std::move(table));
  return *it->second;
}

Int retraction_coeff0(const RationalMod1& theta, int64_t level) {
  if (level < 1) throw InputError("retraction_coeff0: level must be >= 1");
  const int64_t den = to_int64(theta.den());
  if (level % den != 0) {
    throw InputError("retraction_coeff0: denominator " + std::to_string(den) + " does not divide level " +
                     std::to_string(level));
  }
  const int64_t t = to_int64(theta.num()) * (level / den);
  return retraction_table(level)[static_cast<std::size_t>(t)];
}

}  // namespace tiling
