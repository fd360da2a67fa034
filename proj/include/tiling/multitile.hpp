#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tiling/annihilator.hpp"
#include "tiling/group.hpp"

namespace tiling {

/// Indicator of a qZ^2-periodic set, bits[x * q + y] for (x, y) in [q]^2.
struct TorusAssignment {
  int64_t q = 1;
  std::vector<uint8_t> bits;

  bool at(int64_t x, int64_t y) const {
    return bits[static_cast<std::size_t>(floor_mod(x, q) * q + floor_mod(y, q))] != 0;
  }
  /// One string per x, '#' for members and '.' otherwise.
  std::vector<std::string> render() const;
  bool operator==(const TorusAssignment&) const = default;
};

struct SearchBudget {
  int64_t max_q = 12;
  int64_t max_box_radius = 8;
  uint64_t max_nodes = 2'000'000;
};

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

std::string to_string(SearchStatus s);

struct PeriodicSearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<TorusAssignment> solution;
  uint64_t nodes = 0;
};

struct BoxRefuteResult {
  /// Found: the box is infeasible (refuted). Exhausted: a consistent partial
  /// configuration exists. BudgetExceeded: inconclusive.
  SearchStatus status = SearchStatus::Exhausted;
  uint64_t nodes = 0;
  bool refuted() const { return status == SearchStatus::Found; }
};

struct MultitileAttempt {
  std::string kind;  // "periodic" or "box"
  int64_t parameter = 0;
  SearchStatus status = SearchStatus::Exhausted;
  uint64_t nodes = 0;
};

struct MultitileVerdict {
  Answer answer = Answer::Unknown;
  std::optional<TorusAssignment> certificate;
  std::optional<int64_t> refutation_radius;
  std::string unknown_reason;
  uint64_t nodes_used = 0;
  std::vector<MultitileAttempt> attempts;
};

/// Scalar period of g (lcm of its per-axis periods).
int64_t scalar_period(const PeriodicMap& g);

/// Lexicographically least q-periodic indicator solution of f * 1_A = g.
/// q must be a multiple of g's period.
PeriodicSearchResult periodic_search(const FinMap& f, const PeriodicMap& g, int64_t q,
                                     uint64_t max_nodes = SearchBudget{}.max_nodes);

/// Whether no 0/1 assignment on [-n-R, n+R]^2 satisfies f * 1_A = g on every
/// cell of [-n, n]^2, R being the largest coordinate magnitude in supp f.
BoxRefuteResult box_refute(const FinMap& f, const PeriodicMap& g, int64_t n,
                           uint64_t max_nodes = SearchBudget{}.max_nodes);

/// Exact check of f * 1_{A_p} = g on all q^2 cells of the certificate.
bool verify_multitile(const FinMap& f, const PeriodicMap& g, const TorusAssignment& cert);

/// Dovetails periodic_search over q = q0, 2q0, ... with box_refute over
/// n = 0, 1, ... under one shared node budget.
MultitileVerdict decide_multitile(const FinMap& f, const PeriodicMap& g, const SearchBudget& budget = {});

}  // namespace tiling
