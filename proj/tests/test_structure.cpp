#include "doctest.h"
#include "support/oracles.hpp"
#include "tiling/multitile.hpp"
#include "tiling/structure.hpp"

using namespace tiling;

namespace {

const GroupSpec Z = GroupSpec::integers(1);
const GroupSpec Z2 = GroupSpec::integers(2);

Vec2 random_primitive(oracle::Rng& rng, int64_t r) {
  for (;;) {
    const Vec2 w{rng.uniform(-r, r), rng.uniform(-r, r)};
    if ((w.x != 0 || w.y != 0) && std::gcd(w.x, w.y) == 1) return w;
  }
}

}  // namespace

TEST_CASE("wedge") {
  CHECK(wedge({1, 0}, {0, 1}) == 1);
  CHECK(wedge({2, 3}, {2, 3}) == 0);
  CHECK(wedge({2, 3}, {4, 5}) == -2);
  oracle::Rng rng(60);
  for (int i = 0; i < 100; ++i) {
    const Vec2 u{rng.uniform(-9, 9), rng.uniform(-9, 9)};
    const Vec2 v{rng.uniform(-9, 9), rng.uniform(-9, 9)};
    const Vec2 t{rng.uniform(-9, 9), rng.uniform(-9, 9)};
    CHECK(wedge(u, v) == -wedge(v, u));
    CHECK(wedge(u + t, v) == wedge(u, v) + wedge(t, v));
  }
}

TEST_CASE("complement examples") {
  CHECK(complement({1, 0}) == Vec2{0, 1});
  CHECK(complement({0, 1}) == Vec2{-1, 0});
  const Vec2 c = complement({2, 3});
  CHECK(wedge({2, 3}, c) == 1);
  CHECK(c == Vec2{1, 2});
  CHECK_THROWS_AS(complement({2, 4}), InputError);
  CHECK_THROWS_AS(complement({0, 0}), InputError);
}

TEST_CASE("reconstruction y = (w^y) w* - (w*^y) w") {
  oracle::Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    const Vec2 w = random_primitive(rng, 12);
    const Vec2 ws = complement(w);
    CHECK(wedge(w, ws) == 1);
    const int64_t dot = ws.x * w.x + ws.y * w.y;
    CHECK(dot >= 0);
    CHECK(dot < w.x * w.x + w.y * w.y);
    for (int k = 0; k < 5; ++k) {
      const Vec2 y{rng.uniform(-50, 50), rng.uniform(-50, 50)};
      CHECK(y == ws * wedge(w, y) - w * wedge(ws, y));
    }
  }
}

TEST_CASE("dilation check examples") {
  const FinMap pair = FinMap::indicator(Z, {{0}, {1}});
  const PeriodicMap a(Z, {2}, {1, 0});
  const PeriodicMap one = PeriodicMap::constant(Z, {1}, 1);
  const auto r3 = dilation_check(pair, a, one, 2, {1, 3, 5});
  CHECK(r3.all_pass());
  const auto r2 = dilation_check(pair, a, one, 1, {1, 2});
  REQUIRE(r2.results.size() == 2);
  CHECK(r2.results[0].pass);
  CHECK_FALSE(r2.results[1].pass);
  CHECK_THROWS_AS(dilation_check(pair, a, one, 2, {2}), InputError);
  CHECK_THROWS_AS(dilation_check(pair, PeriodicMap::constant(Z, {1}, 1), one, 2, {3}), InputError);
}

TEST_CASE("dilation ladder") {
  CHECK(dilation_ladder(2, 2) == std::vector<int64_t>{2, 6});
  const auto l = dilation_ladder(4, 3);
  CHECK(std::is_sorted(l.begin(), l.end()));
  CHECK(l.front() == 4);
  CHECK(l.back() == oracle::primorial(5) * 2);
}

TEST_CASE("dilation stability of multi-tiling certificates") {
  const std::vector<FinMap> tiles{
      FinMap::indicator(Z2, {{0, 0}, {1, 0}}),
      FinMap::indicator(Z2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}),
      FinMap::indicator(Z2, {{0, 0}, {1, 0}, {2, 0}}),
      FinMap::indicator(Z2, {{0, 0}, {1, 1}}),
  };
  for (const auto& f : tiles) {
    for (int64_t level : {1, 2}) {
      const PeriodicMap g = PeriodicMap::constant(Z2, {1, 1}, level);
      const auto v = decide_multitile(f, g);
      REQUIRE(v.answer == Answer::Yes);
      const TorusAssignment& t = *v.certificate;
      const PeriodicMap a = PeriodicMap::from_function(Z2, {t.q, t.q}, [&](const GroupElement& x) {
        return Int(t.at(x[0], x[1]) ? 1 : 0);
      });
      const auto q = find_dilation_modulus(f, a, g, dilation_ladder(t.q, to_int64(l1_norm(f))));
      CHECK(q.has_value());
    }
  }
}

TEST_CASE("slice examples") {
  const FinMap f = FinMap::indicator(Z2, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(slice(f, {0, 0}, {1, 0}) == FinMap::indicator(Z2, {{0, 0}, {1, 0}}));
  CHECK(slice(f, {5, 1}, {1, 0}) == FinMap::indicator(Z2, {{0, 1}}));
  CHECK(slice(f, {0, 7}, {1, 0}).is_zero());
  const FinMap line = FinMap::indicator(Z2, {{0, 0}, {2, 2}});
  CHECK(slice(line, {1, 1}, {1, 1}) == line);
  CHECK(slices(line, {1, 1}).size() == 1);
  CHECK_THROWS_AS(slice(f, {0, 0}, {2, 0}), InputError);
}

TEST_CASE("slices partition f") {
  oracle::Rng rng(62);
  for (int i = 0; i < 150; ++i) {
    const FinMap f = oracle::random_finmap(rng, Z2, 6, 3, 4);
    const Vec2 w = random_primitive(rng, 3);
    FinMap sum(Z2);
    for (const auto& [label, part] : slices(f, w)) {
      sum = sum + part;
      for (const auto& [y, c] : part.entries()) CHECK(wedge(w, {y[0], y[1]}) == label);
    }
    CHECK(sum == f);
  }
}

TEST_CASE("period lattice") {
  const PeriodicMap stripes = PeriodicMap::from_function(Z2, {4, 4}, [](const GroupElement& x) {
    return Int(floor_mod(x[0], 2));
  });
  CHECK(period_lattice(stripes) == PeriodLattice{2, 0, 1});
  const PeriodicMap diag = PeriodicMap::from_function(Z2, {3, 3}, [](const GroupElement& x) {
    return Int(floor_mod(x[0] + x[1], 3));
  });
  const auto lat = period_lattice(diag);
  CHECK(lat == PeriodLattice{3, 2, 1});
  CHECK(lat.contains({1, -1}));
  CHECK_FALSE(lat.contains({1, 0}));
  CHECK(lat.index() == 3);
}

TEST_CASE("slicing periodicity check") {
  const FinMap f = FinMap::indicator(Z2, {{0, 0}, {1, 0}, {0, 1}});
  const auto flat = slicing_periodicity_check(f, PeriodicMap::constant(Z2, {1, 1}, 5), {1, 0}, 1);
  REQUIRE(flat.size() == 2);
  for (const auto& r : flat) CHECK(r.lattice == PeriodLattice{1, 0, 1});
  CHECK(slicing_periodicity_check(FinMap(Z2), PeriodicMap::constant(Z2, {1, 1}, 5), {1, 0}, 1).empty());
  const PeriodicMap not_periodic = PeriodicMap::from_function(Z2, {3, 1}, [](const GroupElement& x) {
    return Int(floor_mod(x[0], 3));
  });
  CHECK_THROWS_AS(slicing_periodicity_check(f, not_periodic, {1, 0}, 2), InputError);
}

TEST_CASE("slice convolution periods contain the periods of phi") {
  oracle::Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    const int64_t p1 = rng.uniform(1, 4);
    const int64_t p2 = rng.uniform(1, 4);
    const PeriodicMap phi = PeriodicMap::from_function(Z2, {p1, p2}, [&](const GroupElement&) {
      return Int(rng.uniform(-2, 2));
    });
    const FinMap f = oracle::random_finmap(rng, Z2, 4, 2, 3);
    // phi is (p1 p2) w periodic for every w.
    const Vec2 w = random_primitive(rng, 2);
    for (const auto& r : slicing_periodicity_check(f, phi, w, p1 * p2)) {
      CHECK(r.lattice.contains({p1, 0}));
      CHECK(r.lattice.contains({0, p2}));
      // Exhaustive period test on the domain agrees with the reported lattice.
      for (int64_t tx = 0; tx < p1; ++tx) {
        for (int64_t ty = 0; ty < p2; ++ty) {
          bool period = true;
          for (const auto& x : oracle::domain_points(r.convolution)) {
            period = period && oracle::periodic_value(r.convolution, {x[0] + tx, x[1] + ty}) ==
                                   oracle::periodic_value(r.convolution, x);
          }
          CHECK(period == r.lattice.contains({tx, ty}));
        }
      }
    }
  }
}

TEST_CASE("Window2D") {
  const auto w = Window2D<Int>::generate(-1, 1, 0, 2, [](int64_t x, int64_t y) { return Int(x * 10 + y); });
  CHECK(w.at(-1, 2) == -8);
  CHECK(w.at(1, 0) == 10);
  CHECK_THROWS_AS(w.at(2, 0), std::out_of_range);
  CHECK_THROWS_AS(Window2D<Int>(0, -1, 0, 0, {}), InputError);
}

TEST_CASE("Cesaro averages") {
  const auto c = Window2D<Int>::generate(0, 9, 0, 9, [](int64_t, int64_t) { return Int(4); });
  const auto cc = cesaro_average(c, {1, 0}, 3);
  for (const auto& v : cc.values()) CHECK(v == 4);
  CHECK(cc.x1() == 6);

  const auto parity = Window2D<Int>::generate(0, 20, 0, 3, [](int64_t x, int64_t) { return Int(x % 2); });
  const auto half = cesaro_average(parity, {1, 0}, 4);
  for (const auto& v : half.values()) CHECK(v == Rational(1, 2));

  const auto cols = Window2D<Int>::generate(0, 5, 0, 9, [](int64_t x, int64_t) { return Int(x % 2 == 0); });
  const auto avg = cesaro_average(cols, {0, 1}, 3);
  for (int64_t x = avg.x0(); x <= avg.x1(); ++x) {
    for (int64_t y = avg.y0(); y <= avg.y1(); ++y) CHECK(avg.at(x, y) == Rational(cols.at(x, y)));
  }
  CHECK_THROWS_AS(cesaro_average(c, {20, 0}, 1), InputError);
  CHECK_THROWS_AS(cesaro_average(c, {1, 0}, 0), InputError);
}

TEST_CASE("Cesaro averages contract and fix v-periodic windows") {
  oracle::Rng rng(64);
  for (int i = 0; i < 100; ++i) {
    const auto a = Window2D<Int>::generate(0, 11, 0, 11, [&](int64_t, int64_t) { return Int(rng.uniform(-5, 5)); });
    const Vec2 v{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const int64_t n = rng.uniform(1, 4);
    if (std::abs(v.x) * n > 10 || std::abs(v.y) * n > 10) continue;
    Int sup = 0;
    for (const auto& x : a.values()) sup = std::max(sup, Int(abs(x)));
    const auto avg_a = cesaro_average(a, v, n);
    for (const auto& x : avg_a.values()) CHECK(abs(x) <= Rational(sup));
    // v-invariant input: a(x) depends only on the class of x modulo v.
    const auto inv = Window2D<Int>::generate(0, 11, 0, 11, [&](int64_t x, int64_t y) { return Int(wedge(v, {x, y})); });
    const auto avg = cesaro_average(inv, v, n);
    for (int64_t x = avg.x0(); x <= avg.x1(); ++x) {
      for (int64_t y = avg.y0(); y <= avg.y1(); ++y) CHECK(avg.at(x, y) == Rational(inv.at(x, y)));
    }
  }
}
