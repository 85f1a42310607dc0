#pragma once

// Small dense linear programming and convex-membership kernels.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "bjg/core.hpp"

namespace bjg {

// Closed disk D(center, radius). Over the reals it degenerates to [c - r, c + r].
struct DiskAtom {
  Scalar center;
  double radius = 0.0;
};

// Convex weights over an atom list, aligned index by index with that list.
struct ConvexCombiner {
  std::vector<double> weights;
};

struct HullMembership {
  bool contains_zero = false;
  // min over the simplex of |sum w_i c_i| - sum w_i r_i, restricted to the
  // supports examined; <= 0 exactly when 0 lies in the hull.
  double gap = 0.0;
  std::optional<ConvexCombiner> combiner;
};

// Is 0 in conv(union of the disks)? The margin is applied as
// tol.margin * max(1, max_i (|c_i| + r_i)), so verdicts do not depend on units.
// Real mode reduces to an interval test. Complex mode checks every single
// atom, every pair in closed form, and every triangle of centres; by
// Caratheodory in the plane this is exact. A combiner is returned whenever the
// verdict is true.
HullMembership zero_in_convex_union(std::span<const DiskAtom> atoms, Field field,
                                    const Tolerances& tol = {});

// Closed-form minimisation over t in [0,1] of
//   |(1-t) a.center + t b.center| - ((1-t) a.radius + t b.radius).
// Returns {t, value}.
std::pair<double, double> min_gap_on_segment(const DiskAtom& a, const DiskAtom& b);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// maximize objective . x  subject to rows[i] . x <= rhs[i] and lower <= x <= upper.
// Empty lower/upper mean x >= 0. Bounds may be +-infinity.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_variables() const { return objective.size(); }
  void add_row(std::vector<double> row, double bound) {
    rows.push_back(std::move(row));
    rhs.push_back(bound);
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus status);

enum class LpArithmetic {
  Float,    // doubles, 1e-9 pivot tolerance
  Rational  // exact rationals; inputs are converted bit-exactly from double
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> argument;
  std::size_t pivots = 0;
};

// Two-phase tableau simplex: Dantzig pricing with a Harris ratio test, Bland's
// rule on degenerate stalls.
// Never returns a partial result: argument is empty unless status is Optimal.
LpResult lp_maximize(const LinearProgram& program, LpArithmetic arithmetic = LpArithmetic::Float);

}  // namespace bjg
