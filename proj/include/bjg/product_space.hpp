#pragma once

// The l_inf-sum of n copies of l1^m: x = (x_1, ..., x_n) with ||x|| = max ||x_i||_1.

#include <cstdint>
#include <vector>

#include "bjg/feasibility.hpp"
#include "bjg/scalar_geometry.hpp"

namespace bjg {

class ProductVector {
 public:
  // Every component must be an l1 vector of the same length and field.
  explicit ProductVector(std::vector<FiniteVector> components);

  static ProductVector zeros(std::size_t n, std::size_t m, Field field);

  std::size_t blocks() const { return components_.size(); }
  std::size_t block_size() const { return components_.front().size(); }
  Field field() const { return components_.front().field(); }
  const FiniteVector& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<FiniteVector>& components() const { return components_; }

  ProductVector plus(const ProductVector& other, Scalar alpha = 1.0) const;

 private:
  std::vector<FiniteVector> components_;
};

double product_norm(const ProductVector& x);

// Component indices attaining the product norm (within tol.active).
std::vector<std::size_t> norming_components(const ProductVector& x, const Tolerances& tol = {});

// Support functional sum_i weights_i * g_i(x_i) of a product vector.
struct SupportDecomposition {
  std::vector<double> weights;
  std::vector<DualVector> functionals;  // one per component; ignored where the weight is 0
};

// Checks: weights >= 0 summing to 1; zero weight off the norming components;
// each weighted g_i is a support functional of x_i. Numerical slack is 1e-12.
bool validate_support_decomposition(const ProductVector& x, const SupportDecomposition& d,
                                    const Tolerances& tol = {});

Scalar evaluate_decomposition(const SupportDecomposition& d, const ProductVector& z);

struct ProductOrthogonality {
  bool orthogonal = false;
  std::vector<DiskAtom> atoms;
  std::vector<std::size_t> atom_component;  // component index of each atom
  HullMembership membership;
};

// x is BJ-orthogonal to y iff 0 lies in the hull of the support ranges of the
// norming components.
ProductOrthogonality product_bj_orthogonality(const ProductVector& x, const ProductVector& y,
                                              const Tolerances& tol = {});
bool product_bj_orthogonal(const ProductVector& x, const ProductVector& y, const Tolerances& tol = {});

// Real-only literal form: some norming x_i is orthogonal to y_i, or two norming
// components have ranges taking strictly opposite signs.
bool product_bj_orthogonal_two_clause(const ProductVector& x, const ProductVector& y,
                                      const Tolerances& tol = {});

bool product_is_smooth(const ProductVector& x, const Tolerances& tol = {});

// False certifies x is not right-symmetric; true is inconclusive.
bool right_symmetry_precondition(const ProductVector& x, const Tolerances& tol = {});

// A unit l1 vector v with v BJ-orthogonal to target. Requires m >= 2 or target = 0.
FiniteVector unit_orthogonal_to(const FiniteVector& target, const Tolerances& tol = {});

// y with ||y_i|| = ||y|| = 1, ||y_j|| < eps elsewhere, y orthogonal to x and x
// not orthogonal to y. Norming components get y_j = delta * sgn(x_j) on supp(x_j),
// scaled to l1 norm delta = min(eps, 1) / 2 unless delta is given explicitly.
ProductVector dominating_orthogonal_witness(const ProductVector& x, std::size_t i, double eps,
                                            std::uint64_t seed = 0, const Tolerances& tol = {},
                                            std::optional<double> delta = std::nullopt);

}  // namespace bjg
