#pragma once

// Extreme contractions: is a norm-one T an extreme point of the unit ball of
// B(linf^n, l1^m)? Decided by directional LPs over the symmetric convex set
//   { D : ||T + D|| <= ||T||, ||T - D|| <= ||T|| },
// which is {0} exactly when every coordinate direction has maximum 0.

#include <optional>
#include <utility>
#include <vector>

#include "bjg/feasibility.hpp"
#include "bjg/operator_space.hpp"

namespace bjg {

enum class ExtremalityVerdict { Extreme, NotExtreme, InconclusiveComplex };

std::string_view to_string(ExtremalityVerdict verdict);

struct ExtremalityOptions {
  OperatorOptions op;
  // Rational solves every directional LP exactly. Float re-solves exactly only
  // the directions whose maximum lands between the two thresholds below.
  LpArithmetic arithmetic = LpArithmetic::Float;
  // Complex inputs are Inconclusive unless this is set, in which case the LP is
  // built on a phase grid with polygonal moduli and the answer is approximate.
  bool approximate_complex = false;
  int complex_point_phases = 4;
  int complex_modulus_directions = 16;
  // Stop at the first direction whose maximum reaches the perturbation floor;
  // directional_maxima then covers only the directions solved.
  bool stop_at_first_perturbation = false;
};

inline constexpr double kExtremeZero = 1e-9;
inline constexpr double kPerturbationFloor = 1e-6;

struct ExtremalityCertificate {
  ExtremalityVerdict verdict = ExtremalityVerdict::InconclusiveComplex;
  std::optional<OperatorMatrix> perturbation;
  // One maximum per coordinate direction solved: m*n real, or 2*m*n complex (real
  // parts then imaginary parts). In complex mode an entry is the last value seen
  // before the verdict, 0 for directions never solved.
  std::vector<double> directional_maxima;
  double norm = 0.0;
  bool exact_resolve_used = false;
  bool approximate = false;
};

// Requires |op_norm(T) - 1| <= 1e-6 (NotNormalized otherwise).
ExtremalityCertificate is_extreme_contraction(const OperatorMatrix& t, const ExtremalityOptions& options = {});

// (T + D, T - D) for a NotExtreme certificate; WrongVerdict otherwise.
std::pair<OperatorMatrix, OperatorMatrix> decompose_midpoint(const ExtremalityCertificate& certificate,
                                                             const OperatorMatrix& t);

}  // namespace bjg
