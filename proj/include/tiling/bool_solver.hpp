#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace tiling {

/// sum_i coeff_i * x_{var_i} == target over 0/1 variables.
struct LinearConstraint {
  std::vector<std::pair<std::size_t, int64_t>> terms;
  int64_t target = 0;
};

/// Backtracking search over 0/1 assignments with interval propagation.
///
/// Each constraint tracks the sum of its assigned terms together with the
/// smallest and largest value its unassigned terms can still add. A
/// constraint whose target leaves that window is a conflict; a variable one
/// of whose values would push the target out of the window is forced to the
/// other value. Decisions go to the lowest-index free variable, 0 before 1,
/// so the first solution reached is the lexicographically least one.
class BoolLinearSolver {
 public:
  enum class Status { Sat, Unsat, BudgetExceeded };

  BoolLinearSolver(std::size_t num_vars, std::vector<LinearConstraint> constraints);

  /// max_nodes bounds the number of decisions (branching assignments).
  Status solve(uint64_t max_nodes);

  const std::vector<uint8_t>& solution() const { return solution_; }
  uint64_t nodes() const { return nodes_; }

 private:
  struct Occurrence {
    std::size_t constraint;
    int64_t coeff;
  };
  struct Window {
    int64_t assigned = 0;
    int64_t lo = 0;  // sum of negative unassigned coefficients
    int64_t hi = 0;  // sum of positive unassigned coefficients
  };

  bool assign(std::size_t var, uint8_t value);
  bool propagate();
  void undo_to(std::size_t trail_size);
  bool search(uint64_t max_nodes);

  std::size_t num_vars_;
  std::vector<LinearConstraint> constraints_;
  std::vector<std::vector<Occurrence>> occurs_;
  std::vector<Window> windows_;
  std::vector<int8_t> value_;  // -1 unassigned
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> dirty_;
  std::vector<uint8_t> solution_;
  uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

}  // namespace tiling
