#include "bjg/product_space.hpp"

#include <algorithm>
#include <cmath>

namespace bjg {

ProductVector::ProductVector(std::vector<FiniteVector> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::EmptyInput, "product vector needs at least one component");
  const auto& first = components_.front();
  for (const auto& c : components_) {
    if (c.norm_kind() != NormKind::L1) throw Error(ErrorKind::ShapeMismatch, "components must be l1 vectors");
    if (c.size() != first.size() || c.field() != first.field())
      throw Error(ErrorKind::ShapeMismatch, "components differ in length or field");
  }
}

ProductVector ProductVector::zeros(std::size_t n, std::size_t m, Field field) {
  std::vector<FiniteVector> parts(n, FiniteVector(std::vector<Scalar>(m), NormKind::L1, field));
  return ProductVector(std::move(parts));
}

ProductVector ProductVector::plus(const ProductVector& other, Scalar alpha) const {
  if (other.blocks() != blocks()) throw Error(ErrorKind::ShapeMismatch, "different block counts");
  std::vector<FiniteVector> out;
  out.reserve(blocks());
  for (std::size_t i = 0; i < blocks(); ++i) out.push_back(components_[i].plus(other[i].scaled(alpha)));
  return ProductVector(std::move(out));
}

double product_norm(const ProductVector& x) {
  double top = 0.0;
  for (const auto& c : x.components()) top = std::max(top, norm(c));
  return top;
}

std::vector<std::size_t> norming_components(const ProductVector& x, const Tolerances& tol) {
  const double top = product_norm(x);
  std::vector<std::size_t> out;
  if (top == 0.0) return out;
  for (std::size_t i = 0; i < x.blocks(); ++i) {
    if (norm(x[i]) >= (1.0 - tol.active) * top) out.push_back(i);
  }
  return out;
}

namespace {

void require_nonzero(const ProductVector& x) {
  if (product_norm(x) == 0.0) throw Error(ErrorKind::ZeroVector, "product vector must be nonzero");
}

void require_compatible(const ProductVector& x, const ProductVector& y) {
  if (x.blocks() != y.blocks() || x.block_size() != y.block_size() || x.field() != y.field())
    throw Error(ErrorKind::ShapeMismatch, "product vectors differ in shape or field");
}

}  // namespace

Scalar evaluate_decomposition(const SupportDecomposition& d, const ProductVector& z) {
  Scalar acc{0.0, 0.0};
  for (std::size_t i = 0; i < z.blocks(); ++i) {
    if (d.weights[i] != 0.0) acc += d.weights[i] * evaluate_functional(d.functionals[i], z[i].entries());
  }
  return acc;
}

bool validate_support_decomposition(const ProductVector& x, const SupportDecomposition& d,
                                    const Tolerances& tol) {
  require_nonzero(x);
  constexpr double slack = 1e-12;
  if (d.weights.size() != x.blocks() || d.functionals.size() != x.blocks()) return false;
  const double top = product_norm(x);
  const auto norming = norming_components(x, tol);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.blocks(); ++i) {
    const double w = d.weights[i];
    if (!(w >= 0.0)) return false;
    sum += w;
    if (w == 0.0) continue;
    if (!std::binary_search(norming.begin(), norming.end(), i)) return false;
    const auto& g = d.functionals[i];
    if (g.size() != x.block_size()) return false;
    if (dual_norm(g, NormKind::L1) > 1.0 + slack) return false;
    const Scalar value = evaluate_functional(g, x[i].entries());
    if (std::abs(value - Scalar{norm(x[i]), 0.0}) > slack * std::max(1.0, top)) return false;
  }
  return std::abs(sum - 1.0) <= slack;
}

ProductOrthogonality product_bj_orthogonality(const ProductVector& x, const ProductVector& y,
                                              const Tolerances& tol) {
  require_compatible(x, y);
  require_nonzero(x);
  ProductOrthogonality out;
  for (std::size_t i : norming_components(x, tol)) {
    for (const auto& atom : support_range(x[i], y[i], tol).atoms) {
      out.atoms.push_back(atom);
      out.atom_component.push_back(i);
    }
  }
  out.membership = zero_in_convex_union(out.atoms, x.field(), tol);
  out.orthogonal = out.membership.contains_zero;
  return out;
}

bool product_bj_orthogonal(const ProductVector& x, const ProductVector& y, const Tolerances& tol) {
  return product_bj_orthogonality(x, y, tol).orthogonal;
}

bool product_bj_orthogonal_two_clause(const ProductVector& x, const ProductVector& y, const Tolerances& tol) {
  require_compatible(x, y);
  require_nonzero(x);
  if (x.field() != Field::Real) throw Error(ErrorKind::ShapeMismatch, "two-clause test is real-only");
  const auto norming = norming_components(x, tol);
  std::vector<std::pair<double, double>> ranges;
  for (std::size_t i : norming) {
    const auto range = support_range(x[i], y[i], tol);
    if (bj_orthogonal_vec(x[i], y[i], tol)) return true;
    ranges.push_back(range.interval());
  }
  for (std::size_t a = 0; a < ranges.size(); ++a) {
    for (std::size_t b = 0; b < ranges.size(); ++b) {
      if (a != b && ranges[a].first < 0.0 && ranges[b].second > 0.0) return true;
    }
  }
  return false;
}

bool product_is_smooth(const ProductVector& x, const Tolerances& tol) {
  require_nonzero(x);
  const auto norming = norming_components(x, tol);
  return norming.size() == 1 && is_smooth_vec(x[norming.front()], tol);
}

bool right_symmetry_precondition(const ProductVector& x, const Tolerances& tol) {
  require_nonzero(x);
  return norming_components(x, tol).size() == x.blocks();
}

FiniteVector unit_orthogonal_to(const FiniteVector& target, [[maybe_unused]] const Tolerances& tol) {
  const std::size_t m = target.size();
  std::vector<Scalar> v(m, Scalar{0.0, 0.0});
  if (norm(target) == 0.0) {
    v[0] = 1.0;
    return FiniteVector(std::move(v), NormKind::L1, target.field());
  }
  if (m == 1) throw Error(ErrorKind::DegenerateComponent, "no unit scalar is orthogonal to a nonzero scalar");
  // e_k at the smallest modulus: |x_k| <= sum_{j != k} |x_j| holds automatically for m >= 2.
  std::size_t k = 0;
  for (std::size_t j = 1; j < m; ++j) {
    if (std::abs(target[j]) < std::abs(target[k])) k = j;
  }
  v[k] = 1.0;
  return FiniteVector(std::move(v), NormKind::L1, target.field());
}

ProductVector dominating_orthogonal_witness(const ProductVector& x, std::size_t i, double eps, std::uint64_t seed,
                                            const Tolerances& tol, std::optional<double> delta) {
  require_nonzero(x);
  if (i >= x.blocks()) throw Error(ErrorKind::PreconditionViolated, "component index out of range");
  if (!(eps > 0.0)) throw Error(ErrorKind::PreconditionViolated, "eps must be positive");
  const auto norming = norming_components(x, tol);
  if (std::binary_search(norming.begin(), norming.end(), i))
    throw Error(ErrorKind::PreconditionViolated, "component is already norming");

  const double step = delta.value_or(std::min(eps, 1.0) / 2.0);
  if (!(step > 0.0) || step >= std::min(eps, 1.0))
    throw Error(ErrorKind::PreconditionViolated, "delta must lie in (0, min(eps, 1))");

  const std::size_t m = x.block_size();
  std::vector<FiniteVector> parts;
  parts.reserve(x.blocks());
  for (std::size_t j = 0; j < x.blocks(); ++j) {
    std::vector<Scalar> v(m, Scalar{0.0, 0.0});
    if (j == i) {
      if (norm(x[i]) == 0.0) {
        v[seed % m] = 1.0;
        parts.emplace_back(std::move(v), NormKind::L1, x.field());
      } else {
        parts.push_back(unit_orthogonal_to(x[i], tol));
      }
      continue;
    }
    if (std::binary_search(norming.begin(), norming.end(), j)) {
      const auto supp = support_indices(x[j], tol);
      const double per_entry = step / static_cast<double>(supp.size());
      for (std::size_t k : supp) v[k] = per_entry * unit_phase(x[j][k]);
    }
    parts.emplace_back(std::move(v), NormKind::L1, x.field());
  }
  return ProductVector(std::move(parts));
}

}  // namespace bjg
