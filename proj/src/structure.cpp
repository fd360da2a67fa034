#include "tiling/structure.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <tuple>

#include "tiling/cyclotomic.hpp"

namespace tiling {

int64_t wedge(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }

bool is_primitive(Vec2 w) { return std::gcd(w.x, w.y) == 1; }

namespace {

// Returns (g, s, t) with a s + b t = g = gcd(a, b) >= 0.
std::array<int64_t, 3> extended_gcd(int64_t a, int64_t b) {
  int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_tuple(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_tuple(t1, t0 - q * t1);
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Vec2 complement(Vec2 w) {
  if (w.x == 0 && w.y == 0) throw InputError("complement: w is zero");
  if (!is_primitive(w)) throw InputError("complement: w is not primitive");
  const auto [g, s, t] = extended_gcd(w.x, w.y);
  // w.x * s + w.y * t = 1, so (-t, s) has wedge 1 with w.
  Vec2 star{-t, s};
  const int64_t norm = w.x * w.x + w.y * w.y;
  const int64_t dot = star.x * w.x + star.y * w.y;
  // Adding k w shifts the dot product by k |w|^2.
  star = star - w * floor_div(dot, norm);
  return star;
}

// ---------------------------------------------------------------------------
// Dilation

bool DilationReport::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const DilationResult& r) { return r.pass; });
}

DilationReport dilation_check(const FinMap& f, const PeriodicMap& a, const PeriodicMap& g, int64_t q,
                              const std::vector<int64_t>& r_list) {
  if (q < 1) throw InputError("dilation_check: q must be positive");
  if (!(f.group() == a.group()) || !(a.group() == g.group())) throw InputError("dilation_check: group mismatch");
  DilationReport report;
  report.periods = joint_periods(a.periods(), g.periods());
  const PeriodicMap a_joint = a.with_periods(report.periods);
  if (!same_function(convolve_periodic(f, a_joint), g)) {
    throw InputError("dilation_check: precondition f*a = g does not hold");
  }
  for (int64_t r : r_list) {
    if (r < 1 || (r - 1) % q != 0) {
      throw InputError("dilation_check: r = " + std::to_string(r) + " is not 1 mod " + std::to_string(q));
    }
    const bool pass = same_function(convolve_periodic(dilate(f, r), a_joint), g);
    report.results.push_back(DilationResult{r, pass});
  }
  return report;
}

std::vector<int64_t> dilation_ladder(int64_t base, int64_t l1) {
  if (base < 1) throw InputError("dilation_ladder: base must be positive");
  std::vector<int64_t> ladder;
  const int64_t top = std::max<int64_t>(l1, 2) + 2;
  for (int64_t m = 1; m <= top; ++m) {
    const int64_t q = lcm64(base, mann_bound(static_cast<int>(m)));
    if (ladder.empty() || ladder.back() != q) ladder.push_back(q);
  }
  return ladder;
}

std::optional<int64_t> find_dilation_modulus(const FinMap& f, const PeriodicMap& a, const PeriodicMap& g,
                                             const std::vector<int64_t>& ladder) {
  for (int64_t q : ladder) {
    if (dilation_check(f, a, g, q, {1 + q, 1 + 2 * q, 1 + 3 * q}).all_pass()) return q;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Slicing

namespace {

void require_plane(const GroupSpec& g) {
  if (!(g == GroupSpec::integers(2))) throw InputError("slicing operates on Z^2, got " + g.str());
}

Vec2 as_vec(const GroupElement& e) { return {e[0], e[1]}; }

}  // namespace

FinMap slice(const FinMap& f, Vec2 x, Vec2 w) {
  require_plane(f.group());
  if (!is_primitive(w)) throw InputError("slice: w is not primitive");
  const int64_t label = wedge(w, x);
  FinMap out(f.group());
  for (const auto& [y, c] : f.entries()) {
    if (wedge(w, as_vec(y)) == label) out.add(y, c);
  }
  return out;
}

std::map<int64_t, FinMap> slices(const FinMap& f, Vec2 w) {
  require_plane(f.group());
  if (!is_primitive(w)) throw InputError("slices: w is not primitive");
  std::map<int64_t, FinMap> out;
  for (const auto& [y, c] : f.entries()) {
    auto [it, inserted] = out.try_emplace(wedge(w, as_vec(y)), f.group());
    it->second.add(y, c);
  }
  return out;
}

bool PeriodLattice::contains(Vec2 t) const {
  if (floor_mod(t.y, c) != 0) return false;
  const int64_t k = t.y / c;
  return floor_mod(t.x - k * b, a) == 0;
}

PeriodLattice period_lattice(const PeriodicMap& m) {
  require_plane(m.group());
  const int64_t p1 = m.periods()[0];
  const int64_t p2 = m.periods()[1];
  auto is_period = [&](int64_t tx, int64_t ty) {
    for (int64_t x = 0; x < p1; ++x) {
      for (int64_t y = 0; y < p2; ++y) {
        if (m.at(GroupElement{x + tx, y + ty}) != m.at(GroupElement{x, y})) return false;
      }
    }
    return true;
  };
  PeriodLattice lat{p1, 0, p2};
  for (int64_t tx = 1; tx <= p1; ++tx) {
    if (is_period(tx, 0)) {
      lat.a = tx;
      break;
    }
  }
  for (int64_t ty = 1; ty <= p2; ++ty) {
    bool found = false;
    for (int64_t tx = 0; tx < lat.a; ++tx) {
      if (is_period(tx, ty)) {
        lat.b = tx;
        lat.c = ty;
        found = true;
        break;
      }
    }
    if (found) break;
  }
  return lat;
}

std::vector<SliceReport> slicing_periodicity_check(const FinMap& f, const PeriodicMap& phi, Vec2 w, int64_t q) {
  require_plane(f.group());
  require_plane(phi.group());
  if (q < 1) throw InputError("slicing_periodicity_check: q must be positive");
  if (!is_primitive(w)) throw InputError("slicing_periodicity_check: w is not primitive");
  const GroupElement shift = (w * q).element();
  for (std::size_t i = 0; i < phi.cell_count(); ++i) {
    const GroupElement x = phi.cell(i);
    if (phi.at(x + shift) != phi.at(x)) {
      throw InputError("slicing_periodicity_check: phi is not q w-periodic");
    }
  }
  std::vector<SliceReport> out;
  for (auto& [label, part] : slices(f, w)) {
    PeriodicMap conv = convolve_periodic(part, phi);
    PeriodLattice lat = period_lattice(conv);
    out.push_back(SliceReport{label, std::move(part), std::move(conv), lat});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cesaro means

Window2D<Rational> cesaro_average(const Window2D<Int>& a, Vec2 v, int64_t n) {
  if (n < 1) throw InputError("cesaro_average: N must be positive");
  // Points of the window whose orbit segment x + v, ..., x + N v stays inside.
  const int64_t x_lo = std::max(a.x0(), a.x0() - std::min(v.x, n * v.x));
  const int64_t x_hi = std::min(a.x1(), a.x1() - std::max(v.x, n * v.x));
  const int64_t y_lo = std::max(a.y0(), a.y0() - std::min(v.y, n * v.y));
  const int64_t y_hi = std::min(a.y1(), a.y1() - std::max(v.y, n * v.y));
  if (x_lo > x_hi || y_lo > y_hi) throw InputError("cesaro_average: orbit segments leave the window everywhere");
  return Window2D<Rational>::generate(x_lo, x_hi, y_lo, y_hi, [&](int64_t x, int64_t y) {
    Rational acc = 0;
    for (int64_t k = 1; k <= n; ++k) acc += a.at(x + k * v.x, y + k * v.y);
    acc /= n;
    acc.canonicalize();
    return acc;
  });
}

}  // namespace tiling
