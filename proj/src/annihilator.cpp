#include "tiling/annihilator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tiling/cyclotomic.hpp"

namespace tiling {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes:
      return "YES";
    case Answer::No:
      return "NO";
    case Answer::Unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

// ---------------------------------------------------------------------------
// CharacterVector

CharacterVector::CharacterVector(GroupSpec group, std::vector<RationalMod1> etas)
    : group_(std::move(group)), etas_(std::move(etas)) {
  if (etas_.size() != group_.rank()) throw InputError("CharacterVector: expected one eta per coordinate");
  for (std::size_t m = 0; m < group_.torsion.size(); ++m) {
    const auto& eta = etas_[static_cast<std::size_t>(group_.free_rank) + m];
    if (!(Int(group_.torsion[m]) * eta).is_zero()) {
      throw InputError("CharacterVector: torsion constraint N*eta = 0 fails for eta = " + eta.str());
    }
  }
  order_ = common_level(etas_);
}

RationalMod1 CharacterVector::phase(const GroupElement& x) const {
  RationalMod1 acc;
  for (std::size_t m = 0; m < etas_.size(); ++m) acc += Int(x[m]) * etas_[m];
  return acc;
}

int64_t CharacterVector::exponent(const GroupElement& x) const {
  int64_t t = 0;
  for (std::size_t m = 0; m < etas_.size(); ++m) {
    const int64_t scale = order_ / to_int64(etas_[m].den());
    const int64_t step = floor_mod(to_int64(etas_[m].num()) * scale, order_);
    t = floor_mod(t + floor_mod(step * floor_mod(x[m], order_), order_), order_);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Witnesses

PeriodicMap witness_periodic_annihilator(const GroupSpec& group, const CharacterVector& chi) {
  if (!(chi.group() == group)) throw InputError("witness_periodic_annihilator: character over another group");
  const int64_t level = chi.order();
  const auto& table = retraction_table(level);
  std::vector<int64_t> periods(static_cast<std::size_t>(group.free_rank), level);
  return PeriodicMap::from_function(group, std::move(periods), [&](const GroupElement& x) {
    return table[static_cast<std::size_t>(chi.exponent(x))];
  });
}

bool verify_annihilator(const FinMap& f, const PeriodicMap& a_p) {
  if (a_p.is_zero()) return false;
  return convolve_periodic(f, a_p).is_zero();
}

// ---------------------------------------------------------------------------
// Partition search

namespace {

using Counts = std::vector<int64_t>;

int64_t total(const Counts& c) { return std::accumulate(c.begin(), c.end(), int64_t{0}); }

// Block order: larger first, then lexicographically larger count vector.
bool block_before(const Counts& a, const Counts& b) {
  const int64_t sa = total(a);
  const int64_t sb = total(b);
  if (sa != sb) return sa > sb;
  return a > b;
}

// Every count vector b <= rem with total(b) == size, lexicographically descending.
void blocks_of_size(const Counts& rem, int64_t size, std::vector<Counts>& out) {
  Counts b(rem.size(), 0);
  std::vector<int64_t> suffix(rem.size() + 1, 0);
  for (std::size_t i = rem.size(); i-- > 0;) suffix[i] = suffix[i + 1] + rem[i];
  auto rec = [&](auto&& self, std::size_t i, int64_t left) -> void {
    if (i == rem.size()) {
      if (left == 0) out.push_back(b);
      return;
    }
    const int64_t hi = std::min(rem[i], left);
    const int64_t lo = std::max<int64_t>(0, left - suffix[i + 1]);
    for (int64_t v = hi; v >= lo; --v) {
      b[i] = v;
      self(self, i + 1, left - v);
    }
    b[i] = 0;
  };
  rec(rec, 0, size);
}

// Multiset partitions of `counts` into blocks of size >= 2, each listed once
// with its blocks in non-increasing block order. Stops when visit returns true.
bool for_each_partition(const Counts& counts, const std::function<bool(const std::vector<Counts>&)>& visit) {
  std::vector<Counts> blocks;
  auto rec = [&](auto&& self, const Counts& rem) -> bool {
    const int64_t left = total(rem);
    if (left == 0) return visit(blocks);
    const int64_t max_size = blocks.empty() ? left : std::min(left, total(blocks.back()));
    for (int64_t size = max_size; size >= 2; --size) {
      if (left - size == 1) continue;
      std::vector<Counts> candidates;
      blocks_of_size(rem, size, candidates);
      for (const auto& b : candidates) {
        if (!blocks.empty() && block_before(b, blocks.back())) continue;
        Counts next = rem;
        for (std::size_t i = 0; i < next.size(); ++i) next[i] -= b[i];
        blocks.push_back(b);
        const bool stop = self(self, next);
        blocks.pop_back();
        if (stop) return true;
      }
    }
    return false;
  };
  return rec(rec, counts);
}

struct TermClass {
  UnitTerm term;
  int64_t multiplicity = 0;
  std::vector<std::size_t> indices;  // positions in the unit expansion
};

struct Row {
  std::vector<Int> coeffs;
  RationalMod1 rhs;
};

struct Search {
  const GroupSpec& group;
  const std::vector<TermClass>& classes;
  DeciderStats& stats;
  std::map<std::pair<Counts, int64_t>, std::vector<std::vector<int64_t>>> omega_cache;

  const std::vector<std::vector<int64_t>>& assignments(const Counts& mult, int64_t modulus) {
    auto key = std::make_pair(mult, modulus);
    auto it = omega_cache.find(key);
    if (it == omega_cache.end()) {
      it = omega_cache.emplace(key, minimal_weighted_assignments(mult, modulus)).first;
    }
    return it->second;
  }

  std::optional<std::vector<RationalMod1>> solve(const std::vector<Row>& rows, std::size_t unknowns) {
    ++stats.systems;
    IntMatrix a(rows.size(), unknowns);
    std::vector<RationalMod1> b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].coeffs.size(); ++j) a(i, j) = rows[i].coeffs[j];
      b[i] = rows[i].rhs;
    }
    auto x = solve_qz(a, b);
    if (x && !verify_qz(a, *x, b)) throw std::logic_error("solve_qz returned an invalid solution");
    return x;
  }

  struct Success {
    std::vector<RationalMod1> solution;
    std::vector<Counts> blocks;
    std::vector<std::vector<int64_t>> exponents;  // per block, per class present
    std::vector<int64_t> moduli;
  };

  // Depth-first over blocks; each block picks one minimal assignment and the
  // accumulated system must stay solvable.
  std::optional<Success> search_partition(const std::vector<Counts>& blocks) {
    const std::size_t r = group.rank();
    const std::size_t unknowns = r + blocks.size();
    std::vector<Row> rows;
    for (std::size_t m = 0; m < group.torsion.size(); ++m) {
      Row row{std::vector<Int>(unknowns), RationalMod1()};
      row.coeffs[static_cast<std::size_t>(group.free_rank) + m] = group.torsion[m];
      rows.push_back(std::move(row));
    }
    std::vector<std::vector<int64_t>> chosen(blocks.size());
    std::vector<int64_t> moduli(blocks.size());

    auto rec = [&](auto&& self, std::size_t beta) -> std::optional<Success> {
      if (beta == blocks.size()) {
        auto x = solve(rows, unknowns);
        if (!x) return std::nullopt;
        return Success{std::move(*x), blocks, chosen, moduli};
      }
      const Counts& block = blocks[beta];
      Counts mult;
      std::vector<std::size_t> present;
      for (std::size_t c = 0; c < block.size(); ++c) {
        if (block[c] > 0) {
          mult.push_back(block[c]);
          present.push_back(c);
        }
      }
      const int64_t modulus = mann_bound(static_cast<int>(total(block)));
      moduli[beta] = modulus;
      const std::size_t base = rows.size();
      for (const auto& exps : assignments(mult, modulus)) {
        // eps_c - sum_m b_{c,m} eta_m = omega_c - xi0  <=>  sum_m b_{c,m} eta_m - xi0 = eps_c - omega_c
        for (std::size_t i = 0; i < present.size(); ++i) {
          const TermClass& cls = classes[present[i]];
          Row row{std::vector<Int>(unknowns), RationalMod1()};
          for (std::size_t m = 0; m < r; ++m) row.coeffs[m] = cls.term.point[m];
          row.coeffs[r + beta] = -1;
          row.rhs = cls.term.sign - RationalMod1::of(exps[i], modulus);
          rows.push_back(std::move(row));
        }
        chosen[beta] = exps;
        const bool last = beta + 1 == blocks.size();
        if (last || solve(rows, unknowns)) {
          if (auto s = self(self, beta + 1)) return s;
        }
        rows.resize(base);
      }
      return std::nullopt;
    };
    return rec(rec, 0);
  }
};

}  // namespace

AnnihilatorVerdict decide_zero_annihilator(const GroupSpec& group, const FinMap& f, int cap) {
  if (!(f.group() == group)) throw InputError("decide_zero_annihilator: f is defined over another group");
  if (f.is_zero()) throw InputError("decide_zero_annihilator: f = 0 is degenerate (every a solves f*a = 0)");
  const Int n = l1_norm(f);
  if (n > cap) {
    throw CapacityError("decide_zero_annihilator: l1 norm " + n.get_str() + " exceeds capacity " +
                        std::to_string(cap));
  }

  AnnihilatorVerdict verdict;
  verdict.expansion = unit_expansion(f);

  std::vector<TermClass> classes;
  for (std::size_t j = 0; j < verdict.expansion.size(); ++j) {
    const UnitTerm& t = verdict.expansion[j];
    if (classes.empty() || !(classes.back().term == t)) classes.push_back(TermClass{t, 0, {}});
    classes.back().multiplicity += 1;
    classes.back().indices.push_back(j);
  }
  Counts counts;
  for (const auto& c : classes) counts.push_back(c.multiplicity);

  Search search{group, classes, verdict.stats, {}};
  std::optional<Search::Success> found;
  for_each_partition(counts, [&](const std::vector<Counts>& blocks) {
    ++verdict.stats.partitions;
    found = search.search_partition(blocks);
    return found.has_value();
  });

  if (!found) {
    verdict.answer = Answer::No;
    return verdict;
  }

  const std::size_t r = group.rank();
  std::vector<RationalMod1> etas(found->solution.begin(), found->solution.begin() + static_cast<long>(r));
  CharacterVector chi(group, etas);

  // Trace: hand out expansion indices class by class in block order.
  std::vector<std::size_t> next_index(classes.size(), 0);
  for (std::size_t beta = 0; beta < found->blocks.size(); ++beta) {
    PartitionBlock pb;
    pb.rotation = found->solution[r + beta];
    std::size_t k = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const int64_t take = found->blocks[beta][c];
      if (take == 0) continue;
      const auto omega = RationalMod1::of(found->exponents[beta][k++], found->moduli[beta]);
      for (int64_t t = 0; t < take; ++t) {
        pb.terms.push_back(classes[c].indices[next_index[c]++]);
        pb.omega.push_back(omega);
      }
    }
    verdict.partition_trace.push_back(std::move(pb));
  }

  // Internal consistency: the rotated terms must form an exact vanishing sum.
  std::vector<RationalMod1> xis;
  for (const auto& t : verdict.expansion) xis.push_back(t.sign - chi.phase(t.point));
  if (!sum_roots_is_zero(xis)) throw std::logic_error("decider: solved character does not annihilate f");

  PeriodicMap witness = witness_periodic_annihilator(group, chi);
  if (!verify_annihilator(f, witness)) throw std::logic_error("decider: periodic witness failed verification");

  verdict.answer = Answer::Yes;
  verdict.witness_character = std::move(chi);
  verdict.witness_map = std::move(witness);
  return verdict;
}

LevelShiftVerdict decide_level_shift(const GroupSpec& group, const FinMap& f, int cap) {
  const Int mass = f.sum();
  if (mass == 0) {
    throw UnsupportedError("decide_level_shift: f has zero sum, so f*a = k has no solution for k != 0");
  }
  LevelShiftVerdict out{decide_zero_annihilator(group, f, cap), mass, std::nullopt, std::nullopt};
  if (out.base.answer != Answer::Yes) return out;

  // a = (b + k) / (f*1) for the annihilator b, trying k = 1 .. |f*1| - 1.
  // Failing those, a = b itself solves f*a = 0.
  const PeriodicMap& b = *out.base.witness_map;
  const Int modulus = abs(mass);
  for (Int k = 1;; ++k) {
    const Int level = (k == modulus) ? Int(0) : k;
    if (level == 0) {
      out.level = 0;
      out.level_solution = b;
      break;
    }
    bool divisible = true;
    for (const Int& v : b.values()) {
      if (!mpz_divisible_p(Int(v + level).get_mpz_t(), mass.get_mpz_t())) {
        divisible = false;
        break;
      }
    }
    if (divisible) {
      std::vector<Int> values;
      values.reserve(b.values().size());
      for (const Int& v : b.values()) values.push_back(Int(v + level) / mass);
      PeriodicMap a(b.group(), b.periods(), std::move(values));
      const PeriodicMap image = convolve_periodic(f, a);
      const bool ok = std::all_of(image.values().begin(), image.values().end(),
                                  [&](const Int& v) { return v == level; });
      if (!ok) throw std::logic_error("decide_level_shift: level solution failed verification");
      out.level = level;
      out.level_solution = std::move(a);
      break;
    }
  }
  return out;
}

}  // namespace tiling
