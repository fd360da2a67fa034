#include "tiling/multitile.hpp"

#include <algorithm>
#include <cstdlib>

#include "tiling/bool_solver.hpp"

namespace tiling {

namespace {

const GroupSpec& plane() {
  static const GroupSpec z2 = GroupSpec::integers(2);
  return z2;
}

void require_plane(const FinMap& f, const PeriodicMap& g) {
  if (!(f.group() == plane())) throw InputError("multi-tiling requires f over Z^2, got " + f.group().str());
  if (!(g.group() == plane())) throw InputError("multi-tiling requires g over Z^2, got " + g.group().str());
}

struct Tap {
  int64_t dx;
  int64_t dy;
  int64_t coeff;
};

std::vector<Tap> taps_of(const FinMap& f) {
  std::vector<Tap> taps;
  for (const auto& [y, c] : f.entries()) taps.push_back(Tap{y[0], y[1], to_int64(c)});
  return taps;
}

int64_t g_at(const PeriodicMap& g, int64_t x, int64_t y) { return to_int64(g.at(GroupElement{x, y})); }

SearchStatus status_of(BoolLinearSolver::Status s, bool sat_means_found) {
  switch (s) {
    case BoolLinearSolver::Status::Sat:
      return sat_means_found ? SearchStatus::Found : SearchStatus::Exhausted;
    case BoolLinearSolver::Status::Unsat:
      return sat_means_found ? SearchStatus::Exhausted : SearchStatus::Found;
    case BoolLinearSolver::Status::BudgetExceeded:
      return SearchStatus::BudgetExceeded;
  }
  return SearchStatus::BudgetExceeded;
}

}  // namespace

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::Exhausted:
      return "exhausted";
    case SearchStatus::BudgetExceeded:
      return "budget_exceeded";
  }
  return "budget_exceeded";
}

std::vector<std::string> TorusAssignment::render() const {
  std::vector<std::string> rows;
  for (int64_t x = 0; x < q; ++x) {
    std::string row;
    for (int64_t y = 0; y < q; ++y) row.push_back(at(x, y) ? '#' : '.');
    rows.push_back(std::move(row));
  }
  return rows;
}

int64_t scalar_period(const PeriodicMap& g) {
  int64_t q = 1;
  for (int64_t p : g.periods()) q = lcm64(q, p);
  return q;
}

PeriodicSearchResult periodic_search(const FinMap& f, const PeriodicMap& g, int64_t q, uint64_t max_nodes) {
  require_plane(f, g);
  if (q < 1) throw InputError("periodic_search: q must be positive");
  for (int64_t p : g.periods()) {
    if (q % p != 0) throw InputError("periodic_search: q is not a multiple of g's period");
  }
  const auto taps = taps_of(f);
  const auto idx = [q](int64_t x, int64_t y) { return static_cast<std::size_t>(floor_mod(x, q) * q + floor_mod(y, q)); };
  std::vector<LinearConstraint> cons;
  cons.reserve(static_cast<std::size_t>(q * q));
  for (int64_t x = 0; x < q; ++x) {
    for (int64_t y = 0; y < q; ++y) {
      LinearConstraint c;
      c.target = g_at(g, x, y);
      for (const auto& t : taps) c.terms.emplace_back(idx(x - t.dx, y - t.dy), t.coeff);
      cons.push_back(std::move(c));
    }
  }
  BoolLinearSolver solver(static_cast<std::size_t>(q * q), std::move(cons));
  const auto status = solver.solve(max_nodes);
  PeriodicSearchResult out;
  out.nodes = solver.nodes();
  out.status = status_of(status, true);
  if (out.status == SearchStatus::Found) out.solution = TorusAssignment{q, solver.solution()};
  return out;
}

BoxRefuteResult box_refute(const FinMap& f, const PeriodicMap& g, int64_t n, uint64_t max_nodes) {
  require_plane(f, g);
  if (n < 0) throw InputError("box_refute: radius must be non-negative");
  const auto taps = taps_of(f);
  int64_t reach = 0;
  for (const auto& t : taps) reach = std::max({reach, std::abs(t.dx), std::abs(t.dy)});
  const int64_t outer = n + reach;
  const int64_t side = 2 * outer + 1;
  const auto idx = [&](int64_t x, int64_t y) { return static_cast<std::size_t>((x + outer) * side + (y + outer)); };

  std::vector<LinearConstraint> cons;
  for (int64_t x = -n; x <= n; ++x) {
    for (int64_t y = -n; y <= n; ++y) {
      LinearConstraint c;
      c.target = g_at(g, x, y);
      for (const auto& t : taps) c.terms.emplace_back(idx(x - t.dx, y - t.dy), t.coeff);
      cons.push_back(std::move(c));
    }
  }
  BoolLinearSolver solver(static_cast<std::size_t>(side * side), std::move(cons));
  const auto status = solver.solve(max_nodes);
  return BoxRefuteResult{status_of(status, false), solver.nodes()};
}

bool verify_multitile(const FinMap& f, const PeriodicMap& g, const TorusAssignment& cert) {
  require_plane(f, g);
  if (cert.q < 1 || cert.bits.size() != static_cast<std::size_t>(cert.q * cert.q)) {
    throw InputError("verify_multitile: malformed torus assignment");
  }
  for (int64_t p : g.periods()) {
    if (cert.q % p != 0) throw InputError("verify_multitile: certificate period is not a multiple of g's period");
  }
  const auto taps = taps_of(f);
  for (int64_t x = 0; x < cert.q; ++x) {
    for (int64_t y = 0; y < cert.q; ++y) {
      int64_t acc = 0;
      for (const auto& t : taps) acc += t.coeff * (cert.at(x - t.dx, y - t.dy) ? 1 : 0);
      if (acc != g_at(g, x, y)) return false;
    }
  }
  return true;
}

MultitileVerdict decide_multitile(const FinMap& f, const PeriodicMap& g, const SearchBudget& budget) {
  require_plane(f, g);
  if (budget.max_q < 1 || budget.max_box_radius < 0 || budget.max_nodes < 1) {
    throw InputError("decide_multitile: budget fields must be positive");
  }
  const int64_t q0 = scalar_period(g);
  MultitileVerdict verdict;

  if (f.is_zero()) {
    // f * 1_A = 0 for every A, so the instance is solvable iff g = 0.
    if (g.is_zero()) {
      verdict.answer = Answer::Yes;
      verdict.certificate = TorusAssignment{q0, std::vector<uint8_t>(static_cast<std::size_t>(q0 * q0), 0)};
      return verdict;
    }
    for (int64_t n = 0;; ++n) {
      const auto r = box_refute(f, g, n, budget.max_nodes);
      verdict.attempts.push_back(MultitileAttempt{"box", n, r.status, r.nodes});
      if (r.refuted()) {
        verdict.answer = Answer::No;
        verdict.refutation_radius = n;
        return verdict;
      }
    }
  }

  int64_t next_multiple = 1;
  int64_t next_radius = 0;
  bool turn_periodic = true;
  for (;;) {
    const bool periodic_left = next_multiple * q0 <= budget.max_q;
    const bool box_left = next_radius <= budget.max_box_radius;
    if (!periodic_left && !box_left) {
      verdict.answer = Answer::Unknown;
      verdict.unknown_reason = "searched every q <= " + std::to_string(budget.max_q) + " and every box radius <= " +
                               std::to_string(budget.max_box_radius) + " without a decision";
      return verdict;
    }
    const uint64_t remaining = budget.max_nodes - verdict.nodes_used;
    const bool do_periodic = periodic_left && (turn_periodic || !box_left);
    turn_periodic = !turn_periodic;

    if (do_periodic) {
      const int64_t q = next_multiple++ * q0;
      auto r = periodic_search(f, g, q, remaining);
      verdict.nodes_used += r.nodes;
      verdict.attempts.push_back(MultitileAttempt{"periodic", q, r.status, r.nodes});
      if (r.status == SearchStatus::Found) {
        if (!verify_multitile(f, g, *r.solution)) throw std::logic_error("periodic_search returned an invalid torus");
        verdict.answer = Answer::Yes;
        verdict.certificate = std::move(r.solution);
        return verdict;
      }
      if (r.status == SearchStatus::BudgetExceeded) break;
    } else {
      const int64_t n = next_radius++;
      const auto r = box_refute(f, g, n, remaining);
      verdict.nodes_used += r.nodes;
      verdict.attempts.push_back(MultitileAttempt{"box", n, r.status, r.nodes});
      if (r.refuted()) {
        verdict.answer = Answer::No;
        verdict.refutation_radius = n;
        return verdict;
      }
      if (r.status == SearchStatus::BudgetExceeded) break;
    }
  }
  verdict.answer = Answer::Unknown;
  verdict.unknown_reason = "node budget of " + std::to_string(budget.max_nodes) + " exhausted";
  return verdict;
}

}  // namespace tiling
