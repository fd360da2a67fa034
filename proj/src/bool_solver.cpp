#include "tiling/bool_solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace tiling {

BoolLinearSolver::BoolLinearSolver(std::size_t num_vars, std::vector<LinearConstraint> constraints)
    : num_vars_(num_vars),
      constraints_(std::move(constraints)),
      occurs_(num_vars),
      windows_(constraints_.size()),
      value_(num_vars, -1) {
  // Merge repeated variables so every constraint mentions a variable once.
  for (auto& con : constraints_) {
    std::sort(con.terms.begin(), con.terms.end());
    std::vector<std::pair<std::size_t, int64_t>> merged;
    for (const auto& [var, coeff] : con.terms) {
      if (!merged.empty() && merged.back().first == var) {
        merged.back().second += coeff;
      } else {
        merged.emplace_back(var, coeff);
      }
    }
    std::erase_if(merged, [](const auto& t) { return t.second == 0; });
    con.terms = std::move(merged);
  }
  for (std::size_t c = 0; c < constraints_.size(); ++c) {
    for (const auto& [var, coeff] : constraints_[c].terms) {
      if (var >= num_vars_) throw std::out_of_range("BoolLinearSolver: variable index out of range");
      if (coeff == 0) continue;
      occurs_[var].push_back(Occurrence{c, coeff});
      if (coeff < 0) {
        windows_[c].lo += coeff;
      } else {
        windows_[c].hi += coeff;
      }
    }
  }
}

bool BoolLinearSolver::assign(std::size_t var, uint8_t value) {
  value_[var] = static_cast<int8_t>(value);
  trail_.push_back(var);
  bool ok = true;
  for (const auto& occ : occurs_[var]) {
    Window& w = windows_[occ.constraint];
    if (occ.coeff < 0) {
      w.lo -= occ.coeff;
    } else {
      w.hi -= occ.coeff;
    }
    if (value) w.assigned += occ.coeff;
    const int64_t target = constraints_[occ.constraint].target;
    if (target < w.assigned + w.lo || target > w.assigned + w.hi) ok = false;
    dirty_.push_back(occ.constraint);
  }
  return ok;
}

void BoolLinearSolver::undo_to(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    const std::size_t var = trail_.back();
    trail_.pop_back();
    const bool one = value_[var] == 1;
    for (const auto& occ : occurs_[var]) {
      Window& w = windows_[occ.constraint];
      if (occ.coeff < 0) {
        w.lo += occ.coeff;
      } else {
        w.hi += occ.coeff;
      }
      if (one) w.assigned -= occ.coeff;
    }
    value_[var] = -1;
  }
  dirty_.clear();
}

bool BoolLinearSolver::propagate() {
  while (!dirty_.empty()) {
    const std::size_t c = dirty_.back();
    dirty_.pop_back();
    const Window w = windows_[c];
    const int64_t target = constraints_[c].target;
    if (target < w.assigned + w.lo || target > w.assigned + w.hi) return false;
    for (const auto& [var, coeff] : constraints_[c].terms) {
      if (value_[var] != -1 || coeff == 0) continue;
      // Window of the constraint if var takes value 1 or 0.
      const int64_t lo1 = w.assigned + coeff + w.lo - (coeff < 0 ? coeff : 0);
      const int64_t hi1 = w.assigned + coeff + w.hi - (coeff > 0 ? coeff : 0);
      const int64_t lo0 = w.assigned + w.lo - (coeff < 0 ? coeff : 0);
      const int64_t hi0 = w.assigned + w.hi - (coeff > 0 ? coeff : 0);
      const bool can1 = lo1 <= target && target <= hi1;
      const bool can0 = lo0 <= target && target <= hi0;
      if (!can0 && !can1) return false;
      if (can0 && can1) continue;
      if (!assign(var, can1 ? 1 : 0)) return false;
      // The window of c changed; rescan it later.
      dirty_.push_back(c);
      break;
    }
  }
  return true;
}

bool BoolLinearSolver::search(uint64_t max_nodes) {
  std::size_t var = 0;
  while (var < num_vars_ && value_[var] != -1) ++var;
  if (var == num_vars_) {
    solution_.assign(num_vars_, 0);
    for (std::size_t i = 0; i < num_vars_; ++i) solution_[i] = static_cast<uint8_t>(value_[i]);
    return true;
  }
  for (uint8_t v : {uint8_t{0}, uint8_t{1}}) {
    if (nodes_ >= max_nodes) {
      out_of_budget_ = true;
      return false;
    }
    ++nodes_;
    const std::size_t mark = trail_.size();
    if (assign(var, v) && propagate() && search(max_nodes)) return true;
    undo_to(mark);
    if (out_of_budget_) return false;
  }
  return false;
}

BoolLinearSolver::Status BoolLinearSolver::solve(uint64_t max_nodes) {
  nodes_ = 0;
  out_of_budget_ = false;
  undo_to(0);
  // Root propagation: every constraint once.
  for (std::size_t c = 0; c < constraints_.size(); ++c) dirty_.push_back(c);
  if (!propagate()) {
    undo_to(0);
    return Status::Unsat;
  }
  const bool found = search(max_nodes);
  if (found) return Status::Sat;
  undo_to(0);
  return out_of_budget_ ? Status::BudgetExceeded : Status::Unsat;
}

}  // namespace tiling
