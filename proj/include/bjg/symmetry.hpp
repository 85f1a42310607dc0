#pragma once

// Witnesses against left- and right-symmetry of operators in B(linf^n, l1^m).
//   left violation:  T _|_ S  and  not S _|_ T
//   right violation: S _|_ T  and  not T _|_ S
// Every returned witness has been re-checked in both orders.

#include <cstdint>
#include <optional>
#include <vector>

#include "bjg/operator_space.hpp"

namespace bjg {

enum class ViolationSide { Left, Right };

enum class ConstructionPath {
  Aligned,            // product-space construction after signed-permutation alignment
  SharedNormingPair,  // rank-one S = Tx w^T with S x = T x and S x' = 0
  ConcentratedImage,  // rank-one S = y x^T / n with a closed-form y
  FallbackSearch      // enumerated and seeded candidates, accepted only after verification
};

std::string_view to_string(ViolationSide side);
std::string_view to_string(ConstructionPath path);

struct DeltaStep {
  double delta = 0.0;
  bool isolated = false;  // norming set of the candidate is exactly {+-x_ell}
};

struct WitnessReport {
  OperatorMatrix subject;
  OperatorMatrix witness;
  ViolationSide direction = ViolationSide::Right;
  OperatorOrthogonality subject_to_witness{};  // subject _|_ witness
  OperatorOrthogonality witness_to_subject{};  // witness _|_ subject
  ConstructionPath path = ConstructionPath::FallbackSearch;
  std::optional<double> delta{};
  std::optional<std::size_t> ell{};
  std::optional<SignedPermutation> permutation{};
  std::vector<DeltaStep> delta_schedule{};
  std::size_t candidates_tried = 0;
  bool approximate = false;
};

struct SymmetryOptions {
  OperatorOptions op;
  std::uint64_t seed = 0;
  double initial_delta = 0.1;
  int max_halvings = 40;
  // Extra halvings run after the first isolating delta, only to record the schedule.
  int trailing_steps = 3;
  std::size_t max_draws = 10000;
};

// Requires n >= 4 and ||T|| = 1 +- 1e-6; T must be certified NotExtreme or be
// normed by fewer than n independent extreme points (PreconditionViolated).
// WitnessNotFound when the construction and the fallback search both fail.
WitnessReport right_symmetry_witness(const OperatorMatrix& t, const SymmetryOptions& options = {});

// Requires T != 0 (ZeroOperator) and T not smooth (PreconditionViolated).
WitnessReport left_symmetry_witness(const OperatorMatrix& t, const SymmetryOptions& options = {});

enum class PairRelation { Mutual, LeftOnly, RightOnly, None };

std::string_view to_string(PairRelation relation);

// LeftOnly: T _|_ S holds and S _|_ T fails; RightOnly is the reverse.
struct SymmetryPair {
  OperatorOrthogonality forward;   // T _|_ S
  OperatorOrthogonality backward;  // S _|_ T
  PairRelation relation = PairRelation::None;
};

SymmetryPair check_symmetry_pair(const OperatorMatrix& t, const OperatorMatrix& s,
                                 const OperatorOptions& options = {});

}  // namespace bjg
