#include "bjg/scalar_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace bjg {

std::string_view to_string(NormKind kind) { return kind == NormKind::L1 ? "l1" : "linf"; }

FiniteVector::FiniteVector(std::vector<Scalar> entries, NormKind norm, Field field)
    : entries_(std::move(entries)), norm_(norm), field_(field) {
  if (entries_.empty()) throw Error(ErrorKind::EmptyInput, "vector must have at least one entry");
  for (const auto& z : entries_) {
    if (!is_finite(z)) throw Error(ErrorKind::NonFinite, "vector entry is not finite");
    if (field_ == Field::Real && z.imag() != 0.0)
      throw Error(ErrorKind::ShapeMismatch, "real vector with a nonzero imaginary part");
  }
}

FiniteVector FiniteVector::real(const std::vector<double>& entries, NormKind norm) {
  return FiniteVector(std::vector<Scalar>(entries.begin(), entries.end()), norm, Field::Real);
}

FiniteVector FiniteVector::scaled(Scalar alpha) const {
  if (field_ == Field::Real && alpha.imag() != 0.0)
    throw Error(ErrorKind::ShapeMismatch, "complex scaling of a real vector");
  std::vector<Scalar> out(entries_);
  for (auto& z : out) z *= alpha;
  return FiniteVector(std::move(out), norm_, field_);
}

FiniteVector FiniteVector::plus(const FiniteVector& other) const {
  if (other.size() != size() || other.norm_ != norm_ || other.field_ != field_)
    throw Error(ErrorKind::ShapeMismatch, "vectors of different shape");
  std::vector<Scalar> out(entries_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other[i];
  return FiniteVector(std::move(out), norm_, field_);
}

double norm(const FiniteVector& v) {
  double acc = 0.0;
  if (v.norm_kind() == NormKind::L1) {
    for (const auto& z : v.entries()) acc += std::abs(z);
  } else {
    for (const auto& z : v.entries()) acc = std::max(acc, std::abs(z));
  }
  return acc;
}

Scalar evaluate_functional(std::span<const Scalar> functional, std::span<const Scalar> w) {
  Scalar acc{0.0, 0.0};
  for (std::size_t i = 0; i < w.size(); ++i) acc += functional[i] * w[i];
  return acc;
}

double dual_norm(std::span<const Scalar> functional, NormKind primal) {
  double acc = 0.0;
  if (primal == NormKind::L1) {
    for (const auto& z : functional) acc = std::max(acc, std::abs(z));
  } else {
    for (const auto& z : functional) acc += std::abs(z);
  }
  return acc;
}

std::pair<double, double> FunctionalRange::interval() const {
  double lo = kInf, hi = -kInf;
  for (const auto& a : atoms) {
    lo = std::min(lo, a.center.real() - a.radius);
    hi = std::max(hi, a.center.real() + a.radius);
  }
  return {lo, hi};
}

namespace {

void require_nonzero(const FiniteVector& x) {
  if (norm(x) == 0.0) throw Error(ErrorKind::ZeroVector, "x must be nonzero");
}

void require_compatible(const FiniteVector& x, const FiniteVector& w) {
  if (x.size() != w.size() || x.norm_kind() != w.norm_kind() || x.field() != w.field())
    throw Error(ErrorKind::ShapeMismatch, "vectors differ in length, norm or field");
}

}  // namespace

std::vector<std::size_t> active_indices(const FiniteVector& x, const Tolerances& tol) {
  double top = 0.0;
  for (const auto& z : x.entries()) top = std::max(top, std::abs(z));
  std::vector<std::size_t> out;
  if (top == 0.0) return out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) >= (1.0 - tol.active) * top) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> support_indices(const FiniteVector& x, const Tolerances& tol) {
  double total = 0.0;
  for (const auto& z : x.entries()) total += std::abs(z);
  std::vector<std::size_t> out;
  if (total == 0.0) return out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > tol.active * total) out.push_back(i);
  }
  return out;
}

FunctionalRange support_range(const FiniteVector& x, const FiniteVector& w, const Tolerances& tol) {
  require_compatible(x, w);
  require_nonzero(x);
  FunctionalRange range;
  range.field = x.field();
  if (x.norm_kind() == NormKind::L1) {
    const auto supp = support_indices(x, tol);
    Scalar centre{0.0, 0.0};
    double radius = 0.0;
    std::size_t next = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (next < supp.size() && supp[next] == k) {
        centre += std::conj(unit_phase(x[k])) * w[k];
        ++next;
      } else {
        radius += std::abs(w[k]);
      }
    }
    range.atoms.push_back({centre, radius});
  } else {
    for (std::size_t i : active_indices(x, tol)) {
      range.atoms.push_back({std::conj(unit_phase(x[i])) * w[i], 0.0});
    }
  }
  return range;
}

bool bj_orthogonal_vec(const FiniteVector& x, const FiniteVector& y, const Tolerances& tol) {
  const auto range = support_range(x, y, tol);
  return zero_in_convex_union(range.atoms, range.field, tol).contains_zero;
}

bool is_smooth_vec(const FiniteVector& x, const Tolerances& tol) {
  require_nonzero(x);
  if (x.norm_kind() == NormKind::L1) return support_indices(x, tol).size() == x.size();
  return active_indices(x, tol).size() == 1;
}

std::vector<DualVector> extreme_support_functionals(const FiniteVector& x, const Tolerances& tol,
                                                    int phases) {
  require_nonzero(x);
  std::vector<DualVector> out;
  if (x.norm_kind() == NormKind::LInf) {
    for (std::size_t i : active_indices(x, tol)) {
      DualVector f(x.size(), Scalar{0.0, 0.0});
      f[i] = std::conj(unit_phase(x[i]));
      out.push_back(std::move(f));
    }
    return out;
  }
  const auto supp = support_indices(x, tol);
  DualVector base(x.size(), Scalar{0.0, 0.0});
  std::vector<std::size_t> free;
  std::size_t next = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (next < supp.size() && supp[next] == k) {
      base[k] = std::conj(unit_phase(x[k]));
      ++next;
    } else {
      free.push_back(k);
    }
  }
  std::vector<Scalar> choices;
  if (x.field() == Field::Real) {
    choices = {Scalar{1.0, 0.0}, Scalar{-1.0, 0.0}};
  } else {
    for (int p = 0; p < phases; ++p) choices.push_back(std::polar(1.0, 2.0 * std::numbers::pi * p / phases));
  }
  std::vector<std::size_t> digit(free.size(), 0);
  for (;;) {
    DualVector f = base;
    for (std::size_t t = 0; t < free.size(); ++t) f[free[t]] = choices[digit[t]];
    out.push_back(std::move(f));
    std::size_t t = 0;
    while (t < digit.size() && ++digit[t] == choices.size()) digit[t++] = 0;
    if (t == digit.size()) break;
  }
  return out;
}

SemiInnerProductSelector::Line SemiInnerProductSelector::line_of(const FiniteVector& x) {
  require_nonzero(x);
  const double size = norm(x);
  std::size_t first = 0;
  while (std::abs(x[first]) == 0.0) ++first;
  const Scalar lambda = size * unit_phase(x[first]);
  return Line{x.scaled(Scalar{1.0, 0.0} / lambda), lambda};
}

DualVector SemiInnerProductSelector::select(const FiniteVector& x, const Tolerances& tol) const {
  const FiniteVector rep = line_of(x).representative;
  std::uint64_t pattern = 0;
  const auto marked = rep.norm_kind() == NormKind::L1 ? support_indices(rep, tol) : active_indices(rep, tol);
  for (std::size_t i : marked) pattern = mix_seed(pattern, i);
  std::mt19937_64 gen(seed_ ? mix_seed(*seed_, pattern) : 0);

  DualVector f(rep.size(), Scalar{0.0, 0.0});
  if (rep.norm_kind() == NormKind::LInf) {
    std::size_t pick = marked.front();
    if (seed_) pick = marked[std::uniform_int_distribution<std::size_t>(0, marked.size() - 1)(gen)];
    f[pick] = std::conj(unit_phase(rep[pick]));
    return f;
  }
  std::vector<bool> in_support(rep.size(), false);
  for (std::size_t i : marked) in_support[i] = true;
  for (std::size_t k = 0; k < rep.size(); ++k) {
    if (in_support[k]) {
      f[k] = std::conj(unit_phase(rep[k]));
    } else if (!seed_) {
      f[k] = 1.0;
    } else if (rep.field() == Field::Real) {
      f[k] = std::bernoulli_distribution(0.5)(gen) ? 1.0 : -1.0;
    } else {
      f[k] = std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(gen));
    }
  }
  return f;
}

Scalar semi_inner_product(const FiniteVector& y, const FiniteVector& x, const SemiInnerProductSelector& selector,
                          const Tolerances& tol) {
  require_compatible(x, y);
  if (norm(x) == 0.0) return Scalar{0.0, 0.0};
  const auto line = SemiInnerProductSelector::line_of(x);
  const DualVector f = selector.select(x, tol);
  return std::conj(line.lambda) * evaluate_functional(f, y.entries());
}

}  // namespace bjg
