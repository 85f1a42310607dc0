#pragma once

#include <random>

#include "bjg/operator_space.hpp"
#include "bjg/product_space.hpp"

namespace gen {

inline bjg::Scalar random_scalar(std::mt19937_64& g, bjg::Field field, bool integral, double zero_rate) {
  std::uniform_int_distribution<int> small(-2, 2);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution zero(zero_rate);
  const double re = integral ? small(g) : normal(g);
  const double im = field == bjg::Field::Real ? 0.0 : (integral ? small(g) : normal(g));
  return zero(g) ? bjg::Scalar{} : bjg::Scalar{re, im};
}

inline bjg::FiniteVector random_vector(std::mt19937_64& g, std::size_t k, bjg::NormKind kind, bjg::Field field,
                                       bool integral, double zero_rate = 0.0) {
  std::vector<bjg::Scalar> v(k);
  for (auto& z : v) z = random_scalar(g, field, integral, zero_rate);
  return bjg::FiniteVector(v, kind, field);
}

// n components of length m.
inline bjg::ProductVector random_product(std::mt19937_64& g, std::size_t n, std::size_t m, bjg::Field field,
                                         bool integral, double zero_rate = 0.0) {
  std::vector<bjg::FiniteVector> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(random_vector(g, m, bjg::NormKind::L1, field, integral, zero_rate));
  return bjg::ProductVector(std::move(comps));
}

// Entries in {-2..2} with the given zero rate (ties are common), or Gaussian.
inline bjg::OperatorMatrix random_operator(std::mt19937_64& g, std::size_t m, std::size_t n, bjg::Field field,
                                           bool integral, double zero_rate = 0.3) {
  std::vector<bjg::Scalar> e(m * n);
  for (auto& z : e) z = random_scalar(g, field, integral, zero_rate);
  return bjg::OperatorMatrix(m, n, e, field);
}

inline bjg::OperatorMatrix normalized(const bjg::OperatorMatrix& t) { return t.scaled(1.0 / bjg::op_norm(t)); }

}  // namespace gen
