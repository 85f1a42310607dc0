#pragma once

// Norms, support-functional ranges, Birkhoff-James orthogonality, smoothness
// and semi-inner products on l1^k and linf^k over R or C.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bjg/core.hpp"
#include "bjg/feasibility.hpp"

namespace bjg {

enum class NormKind { L1, LInf };

std::string_view to_string(NormKind kind);

class FiniteVector {
 public:
  // Throws NonFinite / EmptyInput. In Real mode imaginary parts must be zero.
  FiniteVector(std::vector<Scalar> entries, NormKind norm, Field field);

  static FiniteVector real(const std::vector<double>& entries, NormKind norm);
  static FiniteVector complex(std::vector<Scalar> entries, NormKind norm) {
    return FiniteVector(std::move(entries), norm, Field::Complex);
  }

  std::size_t size() const { return entries_.size(); }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Scalar> entries() const { return entries_; }
  NormKind norm_kind() const { return norm_; }
  Field field() const { return field_; }

  FiniteVector scaled(Scalar alpha) const;
  FiniteVector plus(const FiniteVector& other) const;

 private:
  std::vector<Scalar> entries_;
  NormKind norm_;
  Field field_;
};

double norm(const FiniteVector& v);

// Dual coefficient vector f, acting as f(w) = sum_k f_k w_k.
using DualVector = std::vector<Scalar>;

Scalar evaluate_functional(std::span<const Scalar> functional, std::span<const Scalar> w);

// Norm of a functional in the dual of the vector's space (linf for L1, l1 for LInf).
double dual_norm(std::span<const Scalar> functional, NormKind primal);

// The set {f(w) : f in J(x)} as the convex hull of disks.
struct FunctionalRange {
  std::vector<DiskAtom> atoms;
  Field field = Field::Real;

  // Real mode: the interval [min(c - r), max(c + r)].
  std::pair<double, double> interval() const;
};

FunctionalRange support_range(const FiniteVector& x, const FiniteVector& w, const Tolerances& tol = {});

// Active (norm-attaining) coordinates of a linf vector, and the support of an l1 vector.
std::vector<std::size_t> active_indices(const FiniteVector& x, const Tolerances& tol = {});
std::vector<std::size_t> support_indices(const FiniteVector& x, const Tolerances& tol = {});

bool bj_orthogonal_vec(const FiniteVector& x, const FiniteVector& y, const Tolerances& tol = {});

bool is_smooth_vec(const FiniteVector& x, const Tolerances& tol = {});

// Extreme support functionals of x. Over R this is the full finite list (for l1
// every sign pattern on the zero coordinates); over C the zero coordinates of an
// l1 vector take phases from a grid of `phases` points, so the list is a sample.
std::vector<DualVector> extreme_support_functionals(const FiniteVector& x, const Tolerances& tol = {},
                                                    int phases = 4);

// Chooses one support functional per line {lambda x : lambda != 0}.
// Default: lowest active index for linf, +1 on every free l1 coordinate.
// Seeded: free choices drawn from a generator keyed by (seed, zero/active pattern),
// so the choice only depends on the line.
class SemiInnerProductSelector {
 public:
  SemiInnerProductSelector() = default;
  static SemiInnerProductSelector seeded(std::uint64_t seed) { return SemiInnerProductSelector(seed); }

  // Canonical unit representative of the line through x, with x = lambda * rep.
  struct Line {
    FiniteVector representative;
    Scalar lambda;
  };
  static Line line_of(const FiniteVector& x);

  // A support functional of the canonical unit representative of x's line.
  DualVector select(const FiniteVector& x, const Tolerances& tol = {}) const;

 private:
  explicit SemiInnerProductSelector(std::uint64_t seed) : seed_(seed) {}
  std::optional<std::uint64_t> seed_;
};

// [y, x] = conj(lambda) * Psi([x])(y) with x = lambda * x0; [x, x] = ||x||^2. Zero for x = 0.
Scalar semi_inner_product(const FiniteVector& y, const FiniteVector& x,
                          const SemiInnerProductSelector& selector = {}, const Tolerances& tol = {});

}  // namespace bjg
