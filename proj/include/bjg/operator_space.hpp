#pragma once

// B(linf^n, l1^m) as dense m x n matrices: operator norm, norming sets,
// operator-level Birkhoff-James orthogonality and smoothness, and the
// embedding T -> (T x_1, ..., T x_n) into the product space.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bjg/feasibility.hpp"
#include "bjg/product_space.hpp"
#include "bjg/scalar_geometry.hpp"

namespace bjg {

inline constexpr std::size_t kMaxDimension = 16;
inline constexpr std::size_t kMaxAlignDimension = 8;

// A point of linf^n; extreme points have unimodular entries.
using Point = std::vector<Scalar>;

class OperatorMatrix {
 public:
  // Dense row-major m x n. Throws DimensionError outside 1..16, NonFinite on NaN/inf.
  OperatorMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries, Field field);

  static OperatorMatrix real(std::size_t rows, std::size_t cols, const std::vector<double>& entries);
  static OperatorMatrix zeros(std::size_t rows, std::size_t cols, Field field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }
  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const Scalar> entries() const { return entries_; }

  bool is_zero() const;
  std::vector<Scalar> apply(std::span<const Scalar> x) const;
  // T x as an element of l1^m.
  FiniteVector image(std::span<const Scalar> x) const;

  OperatorMatrix plus(const OperatorMatrix& other, Scalar alpha = 1.0) const;
  OperatorMatrix scaled(Scalar alpha) const;
  OperatorMatrix with_entry(std::size_t i, std::size_t j, Scalar value) const;

  friend bool operator==(const OperatorMatrix&, const OperatorMatrix&) = default;

 private:
  std::size_t rows_, cols_;
  std::vector<Scalar> entries_;
  Field field_;
};

struct OperatorOptions {
  Tolerances tol;
  int phase_grid = 64;     // complex mode: phases per coordinate
  std::uint64_t seed = 0;  // complex mode: random ascent starts
};

struct NormEstimate {
  double value = 0.0;
  // Real mode is an exact enumeration. Complex mode is a grid-certified lower bound.
  bool exact = true;
};

NormEstimate op_norm_estimate(const OperatorMatrix& t, const OperatorOptions& options = {});
double op_norm(const OperatorMatrix& t, const OperatorOptions& options = {});

struct NormingSet {
  double norm = 0.0;
  // Real: sign vectors with first entry +1 (the set is closed under negation).
  // Complex: phase vectors with first entry 1, one per rotation class found.
  std::vector<Point> representatives;
  bool approximate = false;

  // Representatives together with their negations (real) or as stored (complex).
  std::vector<Point> members() const;
};

NormingSet norming_set(const OperatorMatrix& t, const OperatorOptions& options = {});

struct OperatorOrthogonality {
  bool orthogonal = false;
  bool approximate = false;
  NormingSet norming;
  std::vector<DiskAtom> atoms;
  std::vector<std::size_t> atom_point;  // index into norming.representatives
  HullMembership membership;
};

// T is BJ-orthogonal to S iff 0 is in the hull of the ranges {g(Sx) : g in J(Tx)}, x in M_T.
OperatorOrthogonality operator_bj_orthogonality(const OperatorMatrix& t, const OperatorMatrix& s,
                                                const OperatorOptions& options = {});
bool operator_bj_orthogonal(const OperatorMatrix& t, const OperatorMatrix& s, const OperatorOptions& options = {});

bool operator_is_smooth(const OperatorMatrix& t, const OperatorOptions& options = {});

// x_i = (1, ..., 1) - 2 e_i. Rejects n = 2, where the family is dependent.
std::vector<Point> canonical_extreme_basis(std::size_t n);

ProductVector gamma_embed(const OperatorMatrix& t, std::span<const Point> basis);
OperatorMatrix gamma_invert(const ProductVector& y, std::span<const Point> basis);

// (P v)_r = phase[r] * v[source[r]].
struct SignedPermutation {
  std::vector<std::size_t> source;
  std::vector<Scalar> phase;

  static SignedPermutation identity(std::size_t n);
  std::size_t size() const { return source.size(); }
  Point apply(std::span<const Scalar> v) const;
  SignedPermutation inverse() const;
  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

// T o P (act on the domain) and P o T (act on the codomain, P of size m).
OperatorMatrix compose(const OperatorMatrix& t, const SignedPermutation& p);
OperatorMatrix compose(const SignedPermutation& p, const OperatorMatrix& t);

// Exhaustive search for P with P(points[i]) = x_i (the canonical family) for all i.
// Requires linearly independent points with unimodular entries and n <= 8.
std::optional<SignedPermutation> signed_permutation_align(std::span<const Point> points, std::size_t n);

// Rank of a set of points (as columns).
std::size_t point_rank(std::span<const Point> points);

}  // namespace bjg
