#include <random>

#include "bjg/product_space.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bjg;

namespace {

ProductVector pv(std::vector<std::vector<double>> blocks) {
  std::vector<FiniteVector> comps;
  for (auto& b : blocks) comps.push_back(FiniteVector::real(b, NormKind::L1));
  return ProductVector(std::move(comps));
}

using gen::random_product;

bool grid_orthogonal(const ProductVector& x, const ProductVector& y) { return oracle::product_orthogonal_by_grid(x, y); }

void check_witness(const ProductVector& x, std::size_t i, double eps, const ProductVector& y) {
  CHECK(norm(y[i]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(product_norm(y) == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t j = 0; j < y.blocks(); ++j)
    if (j != i) CHECK(norm(y[j]) < eps);
  CHECK(product_bj_orthogonal(y, x));
  CHECK_FALSE(product_bj_orthogonal(x, y));
}

}  // namespace

TEST_CASE("product norm") {
  CHECK(product_norm(pv({{1, 0}, {0, -2}})) == 2.0);
  CHECK(product_norm(ProductVector::zeros(3, 2, Field::Real)) == 0.0);
  CHECK(product_norm(pv({{1, 1}, {1, 1}})) == 2.0);
}

TEST_CASE("mismatched blocks are rejected") {
  CHECK_THROWS_AS(pv({{1, 0}, {1}}), Error);
  CHECK_THROWS_AS(ProductVector({FiniteVector::real({1}, NormKind::LInf)}), Error);
}

TEST_CASE("support decomposition validation") {
  const auto x = pv({{1, 0}, {0, 1}});
  CHECK(validate_support_decomposition(x, {{0.5, 0.5}, {{1, 0}, {0, 1}}}));
  const auto deficient = pv({{1, 0}, {0, 0.5}});
  CHECK_FALSE(validate_support_decomposition(deficient, {{0.0, 1.0}, {{1, 0}, {0, 1}}}));
  CHECK_FALSE(validate_support_decomposition(x, {{0.6, 0.6}, {{1, 0}, {0, 1}}}));
  // wrong sign on the support
  CHECK_FALSE(validate_support_decomposition(x, {{0.5, 0.5}, {{-1, 0}, {0, 1}}}));
  CHECK_THROWS_AS(validate_support_decomposition(ProductVector::zeros(2, 2, Field::Real), {{1, 0}, {{1, 0}, {0, 1}}}),
                  Error);
}

TEST_CASE("valid decompositions induce norm-one functionals attaining the norm") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_product(gen, 1 + trial % 4, 1 + trial % 3, Field::Real, true);
    if (product_norm(x) == 0.0) continue;
    const auto active = norming_components(x);
    SupportDecomposition d;
    d.weights.assign(x.blocks(), 0.0);
    d.functionals.assign(x.blocks(), DualVector(x.block_size()));
    double total = 0.0;
    for (auto i : active) total += (d.weights[i] = unit(gen) + 0.01);
    for (auto i : active) {
      d.weights[i] /= total;
      for (std::size_t k = 0; k < x.block_size(); ++k) {
        const double v = x[i][k].real();
        d.functionals[i][k] = v > 0 ? 1.0 : v < 0 ? -1.0 : 2.0 * unit(gen) - 1.0;
      }
    }
    REQUIRE(validate_support_decomposition(x, d));
    CHECK(evaluate_decomposition(d, x).real() == doctest::Approx(product_norm(x)).epsilon(1e-12));
    for (int s = 0; s < 20; ++s) {
      const auto z = random_product(gen, x.blocks(), x.block_size(), Field::Real, false);
      CHECK(std::abs(evaluate_decomposition(d, z)) <= product_norm(z) + 1e-12);
    }
  }
}

TEST_CASE("product orthogonality examples") {
  const auto x = pv({{1, 0}, {0, 1}});
  CHECK(product_bj_orthogonal(x, pv({{1, 0}, {0, -1}})));
  CHECK_FALSE(product_bj_orthogonal(x, pv({{1, 0}, {0, 1}})));
  const auto x2 = pv({{1, 0}, {0, 0.5}});
  const auto y2 = pv({{0, 5}, {1, 0}});
  CHECK(product_bj_orthogonal(x2, y2));
  CHECK(grid_orthogonal(x2, y2));
  CHECK_THROWS_AS(product_bj_orthogonal(ProductVector::zeros(2, 2, Field::Real), x), Error);
}

TEST_CASE("product orthogonality agrees with the lambda grid") {
  std::mt19937_64 gen(32);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (auto field : {Field::Real, Field::Complex}) {
    std::size_t yes = 0, total = 0;
    for (int trial = 0; trial < (field == Field::Real ? 300 : 40); ++trial) {
      const std::size_t n = dim(gen), m = dim(gen);
      const bool integral = trial % 2 == 0;
      const auto x = random_product(gen, n, m, field, integral, trial % 3 == 0 ? 0.6 : 0.0);
      if (product_norm(x) == 0.0) continue;
      const auto y = random_product(gen, n, m, field, integral);
      const bool verdict = product_bj_orthogonal(x, y);
      CHECK(verdict == grid_orthogonal(x, y));
      yes += verdict;
      ++total;
    }
    CHECK(yes > 0);
    CHECK(yes < total);
  }
}

TEST_CASE("real hull test equals the two-clause test") {
  std::mt19937_64 gen(33);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto x = random_product(gen, 1 + trial % 5, 1 + (trial / 5) % 4, Field::Real, trial % 4 != 0);
    if (product_norm(x) == 0.0) continue;
    const auto y = random_product(gen, x.blocks(), x.block_size(), Field::Real, trial % 4 != 0);
    CHECK(product_bj_orthogonal(x, y) == product_bj_orthogonal_two_clause(x, y));
  }
}

TEST_CASE("product smoothness") {
  CHECK(product_is_smooth(pv({{1, 1}, {0, 1}})));
  CHECK_FALSE(product_is_smooth(pv({{1, 0}, {0, 1}})));
  CHECK_FALSE(product_is_smooth(pv({{1, 0}, {0, 0.5}})));
}

TEST_CASE("right-symmetry necessary condition") {
  CHECK(right_symmetry_precondition(pv({{1, 0}, {0, 1}})));
  CHECK_FALSE(right_symmetry_precondition(pv({{1, 0}, {0, 0.5}})));
  CHECK(right_symmetry_precondition(pv({{0.3, -2}})));
}

TEST_CASE("unit orthogonal vectors") {
  std::mt19937_64 gen(34);
  for (int trial = 0; trial < 200; ++trial) {
    const auto field = trial % 2 ? Field::Real : Field::Complex;
    const auto t = random_product(gen, 1, 2 + trial % 4, field, trial % 3 == 0)[0];
    const auto v = unit_orthogonal_to(t);
    CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-12));
    if (norm(t) > 0.0) CHECK(bj_orthogonal_vec(v, t));
  }
  CHECK_THROWS_AS(unit_orthogonal_to(FiniteVector::real({2}, NormKind::L1)), Error);
}

TEST_CASE("dominating witness: worked example") {
  const auto x = pv({{1, 0}, {0, 0.5}});
  const auto y = dominating_orthogonal_witness(x, 1, 0.1);
  check_witness(x, 1, 0.1, y);
  CHECK(norm(y[0]) == doctest::Approx(0.05));
  CHECK(y[0][1] == Scalar(0.0, 0.0));
}

TEST_CASE("dominating witness: zero component") {
  const auto x = pv({{1, -1}, {0, 0}, {2, 0}});
  check_witness(x, 1, 0.2, dominating_orthogonal_witness(x, 1, 0.2));
  const auto scalar = pv({{1}, {0}});
  check_witness(scalar, 1, 0.5, dominating_orthogonal_witness(scalar, 1, 0.5));
}

TEST_CASE("dominating witness: errors") {
  CHECK_THROWS_AS(dominating_orthogonal_witness(pv({{1, 0}, {0, 1}}), 0, 0.1), Error);
  try {
    dominating_orthogonal_witness(pv({{1}, {0.5}}), 1, 0.1);
    FAIL("expected DegenerateComponent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateComponent);
  }
}

TEST_CASE("dominating witness: random instances") {
  std::mt19937_64 gen(35);
  std::size_t built = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto field = trial % 2 ? Field::Real : Field::Complex;
    const auto x = random_product(gen, 2 + trial % 3, 2 + trial % 3, field, trial % 3 != 0);
    if (product_norm(x) == 0.0) continue;
    for (std::size_t i = 0; i < x.blocks(); ++i) {
      if (norm(x[i]) >= product_norm(x) * (1 - 1e-9)) continue;
      const double eps = trial % 5 == 0 ? 1e-3 : 0.25;
      check_witness(x, i, eps, dominating_orthogonal_witness(x, i, eps, trial));
      ++built;
    }
  }
  CHECK(built > 100);
}
