#include "doctest.h"
#include "support/oracles.hpp"
#include "tiling/group.hpp"

using namespace tiling;

namespace {

const GroupSpec Z = GroupSpec::integers(1);
const GroupSpec Z2 = GroupSpec::integers(2);

FinMap three_minus_two() { return FinMap(Z, {{{-1}, 3}, {{1}, 3}, {{0}, -2}}); }

}  // namespace

TEST_CASE("group elements canonicalize torsion coordinates") {
  const GroupSpec g(1, {3});
  CHECK(g.element({4, 5}) == GroupElement{4, 2});
  CHECK(g.element({4, -1}) == GroupElement{4, 2});
  CHECK(g.canonical(g.canonical(GroupElement{0, 7})) == g.canonical(GroupElement{0, 7}));
  CHECK_THROWS_AS(g.element({1}), InputError);
  CHECK(g.rank() == 2);
}

TEST_CASE("FinMap stores no zero coefficients") {
  FinMap f(Z);
  f.add({2}, 3);
  f.add({2}, -3);
  CHECK(f.is_zero());
  CHECK(f.support_size() == 0);
  const GroupSpec z3 = GroupSpec::cyclic(3);
  FinMap h(z3);
  h.add({5}, 1);
  CHECK(h.at({2}) == 1);
  CHECK(h.entries().begin()->first == GroupElement{2});
}

TEST_CASE("convolution examples") {
  oracle::Rng rng(1);
  const FinMap f = oracle::random_finmap(rng, Z2, 4, 3, 3);
  CHECK(convolve(FinMap::delta(Z2, Z2.zero()), f) == f);

  const FinMap pair = FinMap::indicator(Z, {{0}, {1}});
  CHECK(convolve(pair, pair) == FinMap(Z, {{{0}, 1}, {{1}, 2}, {{2}, 1}}));

  const GroupSpec z2 = GroupSpec::cyclic(2);
  CHECK(convolve(FinMap::indicator(z2, {{0}}), FinMap::indicator(z2, {{1}})) == FinMap::indicator(z2, {{1}}));

  CHECK_THROWS_AS(convolve(pair, f), InputError);
}

TEST_CASE("convolve_periodic examples") {
  const FinMap pair = FinMap::indicator(Z, {{0}, {1}});
  const PeriodicMap one = PeriodicMap::constant(Z, {1}, 1);
  CHECK(convolve_periodic(pair, one).values() == std::vector<Int>{2});

  const PeriodicMap alt10(Z, {2}, {1, 0});
  CHECK(convolve_periodic(pair, alt10).values() == std::vector<Int>{1, 1});

  const PeriodicMap alt(Z, {2}, {1, -1});
  CHECK(convolve_periodic(three_minus_two(), alt).values() == std::vector<Int>{-8, 8});
}

TEST_CASE("dilation examples") {
  const FinMap pair = FinMap::indicator(Z, {{0}, {1}});
  CHECK(dilate(pair, 1) == pair);
  CHECK(dilate(pair, 2) == FinMap::indicator(Z, {{0}, {2}}));
  const GroupSpec z2 = GroupSpec::cyclic(2);
  CHECK(dilate(FinMap::indicator(z2, {{0}, {1}}), 2) == FinMap(z2, {{{0}, 2}}));
  CHECK_THROWS_AS(dilate(pair, 0), InputError);
}

TEST_CASE("difference examples") {
  oracle::Rng rng(2);
  const FinMap f = oracle::random_finmap(rng, Z2, 5, 4, 4);
  CHECK(difference(f, Z2.zero()).is_zero());
  const PeriodicMap c = PeriodicMap::constant(Z2, {3, 2}, 7);
  CHECK(difference(c, GroupElement{1, 5}).is_zero());
  CHECK(difference(FinMap::delta(Z, {0}), GroupElement{1}) == FinMap(Z, {{{-1}, 1}, {{0}, -1}}));
  // Pointwise form on a periodic map.
  const PeriodicMap a(Z, {3}, {1, 4, 9});
  CHECK(difference(a, GroupElement{1}).values() == std::vector<Int>{3, 5, -8});
}

TEST_CASE("pushforward examples") {
  const GroupElement w{0, 1};
  const auto p1 = pushforward(FinMap::indicator(Z2, {{0, 0}, {0, 5}}), w);
  CHECK(p1.quotient.target == Z);
  CHECK(p1.image == FinMap(Z, {{{0}, 2}}));
  const auto p2 = pushforward(FinMap::indicator(Z2, {{0, 0}, {1, 0}}), w);
  CHECK(p2.image == FinMap::indicator(Z, {{0}, {1}}));
  // The projection along (0, 1) reads off x.
  CHECK(p2.quotient.project({7, -3}) == GroupElement{7});
}

TEST_CASE("pushforward along (1,1) matches coset membership") {
  const Quotient q = quotient_by(Z2, {1, 1});
  CHECK(q.target == Z);
  // y - x in <w> iff y and x project to the same point.
  for (int64_t a = -3; a <= 3; ++a) {
    for (int64_t b = -3; b <= 3; ++b) {
      for (int64_t c = -3; c <= 3; ++c) {
        for (int64_t d = -3; d <= 3; ++d) {
          const bool same_coset = (c - a) == (d - b);
          CHECK((q.project({a, b}) == q.project({c, d})) == same_coset);
        }
      }
    }
  }
  const auto p = pushforward(FinMap::delta(Z2, {1, 0}), {1, 1});
  CHECK(p.image == FinMap::delta(Z, q.project({1, 0})));
}

TEST_CASE("pushforward with torsion keeps the right quotient") {
  const GroupSpec g(1, {2});
  const Quotient q = quotient_by(g, {2, 1});
  // Z x Z/2 modulo <(2,1)> is cyclic of order 4, generated by (1,0).
  CHECK(q.target == GroupSpec::cyclic(4));
  CHECK(quotient_by(GroupSpec::integers(2), {2, 0}).target == GroupSpec(1, {2}));
}

TEST_CASE("pushforward rejects zero or finite-order w") {
  CHECK_THROWS_AS(quotient_by(Z2, {0, 0}), UnsupportedError);
  CHECK_THROWS_AS(quotient_by(GroupSpec(1, {3}), {0, 1}), UnsupportedError);
}

TEST_CASE("l1 norm and unit expansion") {
  CHECK(l1_norm(FinMap(Z)) == 0);
  CHECK(l1_norm(three_minus_two()) == 8);
  CHECK(l1_norm(FinMap::indicator(Z, {{0}, {1}})) == 2);

  CHECK(unit_expansion(FinMap::delta(Z, {5})) == std::vector<UnitTerm>{{{5}, RationalMod1()}});
  const auto neg = unit_expansion(FinMap(Z, {{{0}, -2}}));
  CHECK(neg == std::vector<UnitTerm>(2, UnitTerm{{0}, RationalMod1::half()}));

  const auto terms = unit_expansion(three_minus_two());
  REQUIRE(terms.size() == 8);
  CHECK(std::count(terms.begin(), terms.end(), UnitTerm{{-1}, RationalMod1()}) == 3);
  CHECK(std::count(terms.begin(), terms.end(), UnitTerm{{1}, RationalMod1()}) == 3);
  CHECK(std::count(terms.begin(), terms.end(), UnitTerm{{0}, RationalMod1::half()}) == 2);
  CHECK_THROWS_AS(unit_expansion(FinMap(Z)), InputError);
}

TEST_CASE("PeriodicMap layout and re-sampling") {
  const GroupSpec g(1, {2});
  const PeriodicMap a(g, {3}, {1, 2, 3, 4, 5, 6});
  CHECK(a.at({0, 1}) == 2);
  CHECK(a.at({2, 0}) == 5);
  CHECK(a.at({-1, 3}) == 6);
  const PeriodicMap b = a.with_periods({6});
  CHECK(same_function(a, b));
  CHECK_THROWS_AS(a.with_periods({4}), InputError);
  CHECK_THROWS_AS(PeriodicMap(g, {2}, {1, 2, 3}), InputError);
  CHECK(joint_periods({2, 3}, {4, 1}) == std::vector<int64_t>{4, 3});
}

// ---------------------------------------------------------------------------
// Properties

TEST_CASE("convolution is commutative, associative and bilinear") {
  oracle::Rng rng(10);
  const std::vector<GroupSpec> groups{Z, Z2, GroupSpec(1, {2}), GroupSpec(0, {6}), GroupSpec(1, {2, 3})};
  for (int i = 0; i < 150; ++i) {
    const GroupSpec& g = rng.pick(groups);
    const FinMap f = oracle::random_finmap(rng, g, 4, 3, 3);
    const FinMap h = oracle::random_finmap(rng, g, 4, 3, 3);
    const FinMap k = oracle::random_finmap(rng, g, 3, 3, 3);
    CHECK(convolve(f, h) == convolve(h, f));
    CHECK(convolve(convolve(f, h), k) == convolve(f, convolve(h, k)));
    CHECK(convolve(f, h + k) == convolve(f, h) + convolve(f, k));
    CHECK(oracle::as_map(convolve(f, h)) == oracle::convolve_finite(f, h));
  }
}

TEST_CASE("difference is convolution with a reflected unit difference") {
  oracle::Rng rng(11);
  const std::vector<GroupSpec> groups{Z, Z2, GroupSpec(1, {3})};
  for (int i = 0; i < 150; ++i) {
    const GroupSpec& g = rng.pick(groups);
    const FinMap f = oracle::random_finmap(rng, g, 4, 3, 3);
    const GroupElement h = g.canonical(oracle::random_element(rng, g, 3));
    const FinMap kernel = FinMap::delta(g, g.canonical(-h)) - FinMap::delta(g, g.zero());
    CHECK(difference(f, h) == convolve(kernel, f));
    // Pointwise definition.
    const FinMap d = difference(f, h);
    for (const auto& [y, c] : f.entries()) {
      for (const GroupElement& x : {y, g.canonical(y - h)}) CHECK(d.at(x) == f.at(x + h) - f.at(x));
    }
  }
}

TEST_CASE("pushforward commutes with convolution") {
  oracle::Rng rng(12);
  const std::vector<GroupSpec> groups{Z2, GroupSpec(1, {2}), GroupSpec(2, {3}), GroupSpec::integers(3)};
  int checked = 0;
  while (checked < 120) {
    const GroupSpec& g = rng.pick(groups);
    const GroupElement w = g.canonical(oracle::random_element(rng, g, 3));
    bool free_part = false;
    for (int i = 0; i < g.free_rank; ++i) free_part = free_part || w[static_cast<std::size_t>(i)] != 0;
    if (!free_part) continue;
    const FinMap f = oracle::random_finmap(rng, g, 4, 3, 3);
    const FinMap h = oracle::random_finmap(rng, g, 4, 3, 3);
    const auto pf = pushforward(f, w);
    const auto ph = pushforward(h, w);
    CHECK(pushforward(convolve(f, h), w).image == convolve(pf.image, ph.image));
    // Mass is preserved.
    CHECK(pf.image.sum() == f.sum());
    ++checked;
  }
}

TEST_CASE("dilations compose multiplicatively") {
  oracle::Rng rng(13);
  const std::vector<GroupSpec> groups{Z, Z2, GroupSpec(1, {4})};
  for (int i = 0; i < 150; ++i) {
    const GroupSpec& g = rng.pick(groups);
    const FinMap f = oracle::random_finmap(rng, g, 4, 3, 4);
    const int64_t r = rng.uniform(1, 5);
    const int64_t s = rng.uniform(1, 5);
    CHECK(dilate(dilate(f, r), s) == dilate(f, r * s));
  }
}

TEST_CASE("convolve_periodic agrees with direct evaluation") {
  oracle::Rng rng(14);
  const std::vector<GroupSpec> groups{Z, Z2, GroupSpec(1, {2}), GroupSpec(0, {5})};
  for (int i = 0; i < 150; ++i) {
    const GroupSpec& g = rng.pick(groups);
    const FinMap f = oracle::random_finmap(rng, g, 4, 3, 4);
    std::vector<int64_t> periods;
    for (int k = 0; k < g.free_rank; ++k) periods.push_back(rng.uniform(1, 4));
    const PeriodicMap a = PeriodicMap::from_function(g, periods, [&](const GroupElement&) {
      return Int(rng.uniform(-3, 3));
    });
    const PeriodicMap fa = convolve_periodic(f, a);
    CHECK(fa.periods() == a.periods());
    for (const auto& x : oracle::domain_points(a)) {
      CHECK(oracle::periodic_value(fa, x) == oracle::convolve_at(f, a, x));
    }
  }
}
