#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tiling/group.hpp"
#include "tiling/qz_linear.hpp"

namespace tiling {

enum class Answer { Yes, No, Unknown };

std::string to_string(Answer a);

/// Finite-order character chi(x) = e(sum_m etas[m] * x_m). Construction
/// enforces N_m * eta_m = 0 on every torsion coordinate.
class CharacterVector {
 public:
  CharacterVector(GroupSpec group, std::vector<RationalMod1> etas);

  static CharacterVector trivial(const GroupSpec& group) {
    return CharacterVector(group, std::vector<RationalMod1>(group.rank()));
  }

  const GroupSpec& group() const { return group_; }
  const std::vector<RationalMod1>& etas() const { return etas_; }
  /// lcm of the denominators of the etas.
  int64_t order() const { return order_; }
  /// sum_m eta_m x_m in Q/Z.
  RationalMod1 phase(const GroupElement& x) const;
  /// Exponent t with chi(x) = zeta_order^t.
  int64_t exponent(const GroupElement& x) const;

 private:
  GroupSpec group_;
  std::vector<RationalMod1> etas_;
  int64_t order_ = 1;
};

/// One block of the successful partition: which expansion terms it holds,
/// the minimal tuple assigned to those positions, and its rotation.
struct PartitionBlock {
  std::vector<std::size_t> terms;
  std::vector<RationalMod1> omega;
  RationalMod1 rotation;
};

struct DeciderStats {
  std::size_t partitions = 0;
  std::size_t systems = 0;
};

struct AnnihilatorVerdict {
  Answer answer = Answer::No;
  std::vector<UnitTerm> expansion;
  std::optional<CharacterVector> witness_character;
  std::optional<PeriodicMap> witness_map;
  std::vector<PartitionBlock> partition_trace;
  DeciderStats stats;
};

inline constexpr int kDefaultL1Cap = 8;

/// Decides whether f * a = 0 has a non-zero bounded integer solution a.
/// YES verdicts carry a character with vanishing Fourier coefficient and a
/// verified periodic annihilator. Throws InputError for f = 0 and
/// CapacityError when l1_norm(f) > cap.
AnnihilatorVerdict decide_zero_annihilator(const GroupSpec& group, const FinMap& f, int cap = kDefaultL1Cap);

/// a_p(x) = coefficient of zeta_L^0 in chi(x), with period L = order(chi) on
/// every free coordinate. Integer valued with a_p(0) = 1.
PeriodicMap witness_periodic_annihilator(const GroupSpec& group, const CharacterVector& chi);

/// f * a_p == 0 on the whole fundamental domain and a_p != 0.
bool verify_annihilator(const FinMap& f, const PeriodicMap& a_p);

struct LevelShiftVerdict {
  AnnihilatorVerdict base;
  Int mass;  // f * 1
  /// On YES: a non-constant periodic a with f * a = level.
  std::optional<Int> level;
  std::optional<PeriodicMap> level_solution;
};

/// Decides solvability of f * a = k for some integer k and non-constant a,
/// through f * a = k  <=>  f * ((f*1) a - k) = 0. Requires f * 1 != 0.
LevelShiftVerdict decide_level_shift(const GroupSpec& group, const FinMap& f, int cap = kDefaultL1Cap);

}  // namespace tiling
