#include <random>

#include "bjg/scalar_geometry.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bjg;

namespace {

FiniteVector l1(std::vector<double> v) { return FiniteVector::real(v, NormKind::L1); }
FiniteVector linf(std::vector<double> v) { return FiniteVector::real(v, NormKind::LInf); }

FiniteVector random_vector(std::mt19937_64& gen, std::size_t k, NormKind kind, Field field, bool integral) {
  return gen::random_vector(gen, k, kind, field, integral);
}

bool grid_orthogonal(const FiniteVector& x, const FiniteVector& y) { return oracle::vector_orthogonal_by_grid(x, y); }

}  // namespace

TEST_CASE("norms") {
  CHECK(norm(l1({1, -1, 2})) == 4.0);
  CHECK(norm(linf({1, -3, 2})) == 3.0);
  CHECK(norm(l1({0, 0})) == 0.0);
  CHECK(norm(FiniteVector::complex({{3, 4}, {0, 1}}, NormKind::L1)) == doctest::Approx(6.0));
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(l1({}), Error);
  CHECK_THROWS_AS(l1({1.0, std::nan("")}), Error);
  CHECK_THROWS_AS(FiniteVector({{1, 1}}, NormKind::L1, Field::Real), Error);
}

TEST_CASE("support range: free coordinate widens the interval") {
  const auto r = support_range(l1({1, 0}), l1({0.5, -2}));
  const auto [lo, hi] = r.interval();
  CHECK(lo == doctest::Approx(-1.5));
  CHECK(hi == doctest::Approx(2.5));
}

TEST_CASE("support range: linf atoms per active index") {
  const auto r = support_range(linf({1, 1}), linf({1, -1}));
  REQUIRE(r.atoms.size() == 2);
  CHECK(r.atoms[0].center.real() == 1.0);
  CHECK(r.atoms[1].center.real() == -1.0);
  CHECK(r.atoms[0].radius == 0.0);
}

TEST_CASE("support range: complex disk") {
  const auto r = support_range(FiniteVector::complex({{0, 1}, 0, 0}, NormKind::L1),
                               FiniteVector::complex({1, 1, 1}, NormKind::L1));
  REQUIRE(r.atoms.size() == 1);
  CHECK(std::abs(r.atoms[0].center - Scalar(0, -1)) <= 1e-15);
  CHECK(r.atoms[0].radius == doctest::Approx(2.0));
}

TEST_CASE("support range: zero vector") {
  CHECK_THROWS_AS(support_range(l1({0, 0}), l1({1, 1})), Error);
  CHECK_THROWS_AS(bj_orthogonal_vec(l1({0, 0}), l1({1, 1})), Error);
}

TEST_CASE("orthogonality examples") {
  CHECK(bj_orthogonal_vec(linf({1, 1}), linf({1, -1})));
  CHECK_FALSE(bj_orthogonal_vec(l1({1, 1}), l1({1, 1})));
  CHECK(bj_orthogonal_vec(l1({1, 0}), l1({1, 2})));
  CHECK(grid_orthogonal(linf({1, 1}), linf({1, -1})));
  CHECK(grid_orthogonal(l1({1, 0}), l1({1, 2})));
}

TEST_CASE("smoothness examples") {
  CHECK(is_smooth_vec(l1({1, -2})));
  CHECK_FALSE(is_smooth_vec(linf({3, 3})));
  CHECK_FALSE(is_smooth_vec(l1({1, 0})));
  CHECK(is_smooth_vec(linf({3, 1})));
}

TEST_CASE("semi-inner product examples") {
  const auto x = l1({2, 0});
  CHECK(semi_inner_product(l1({3, 5}), x).real() == doctest::Approx(16.0));
  CHECK(semi_inner_product(x, x).real() == doctest::Approx(4.0));
  CHECK(semi_inner_product(l1({3, 5}), l1({0, 0})) == Scalar(0.0, 0.0));
}

TEST_CASE("orthogonality agrees with the lambda grid") {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<std::size_t> len(1, 6);
  std::size_t orthogonal = 0, total = 0;
  for (auto kind : {NormKind::L1, NormKind::LInf}) {
    for (auto field : {Field::Real, Field::Complex}) {
      for (int trial = 0; trial < (field == Field::Real ? 200 : 40); ++trial) {
        const std::size_t k = len(gen);
        const bool integral = trial % 2 == 0;
        auto x = random_vector(gen, k, kind, field, integral);
        if (norm(x) == 0.0) continue;
        const auto y = random_vector(gen, k, kind, field, integral);
        const bool verdict = bj_orthogonal_vec(x, y);
        CHECK(verdict == grid_orthogonal(x, y));
        orthogonal += verdict;
        ++total;
      }
    }
  }
  // Both verdicts occur often enough to make the comparison meaningful.
  CHECK(orthogonal > total / 10);
  CHECK(orthogonal < total - total / 10);
}

TEST_CASE("orthogonality is homogeneous") {
  std::mt19937_64 gen(22);
  const std::vector<Scalar> scales = {{2, 0}, {-0.5, 0}, {0, 1}, {1, -1}};
  for (auto field : {Field::Real, Field::Complex}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto kind = trial % 2 ? NormKind::L1 : NormKind::LInf;
      const auto x = random_vector(gen, 1 + trial % 5, kind, field, true);
      if (norm(x) == 0.0) continue;
      const auto y = random_vector(gen, x.size(), kind, field, true);
      const bool base = bj_orthogonal_vec(x, y);
      for (auto a : scales) {
        for (auto b : scales) {
          if (field == Field::Real && (a.imag() != 0.0 || b.imag() != 0.0)) continue;
          CHECK(bj_orthogonal_vec(x.scaled(a), y.scaled(b)) == base);
        }
      }
    }
  }
}

TEST_CASE("extreme support functionals norm x") {
  std::mt19937_64 gen(23);
  for (auto field : {Field::Real, Field::Complex}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto kind = trial % 2 ? NormKind::L1 : NormKind::LInf;
      const auto x = random_vector(gen, 1 + trial % 5, kind, field, trial % 3 != 0);
      if (norm(x) == 0.0) continue;
      const auto w = random_vector(gen, x.size(), kind, field, false);
      const auto range = support_range(x, w);
      for (const auto& f : extreme_support_functionals(x)) {
        CHECK(dual_norm(f, kind) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(evaluate_functional(f, x.entries()) - norm(x)) <= 1e-12 * std::max(1.0, norm(x)));
        // f(w) lies in the range: inside some atom (l1 has one disk; linf atoms are the vertices).
        const Scalar v = evaluate_functional(f, w.entries());
        bool inside = false;
        for (const auto& a : range.atoms) inside = inside || std::abs(v - a.center) <= a.radius + 1e-12;
        CHECK(inside);
      }
    }
  }
}

TEST_CASE("sampled support functionals land in the range hull") {
  std::mt19937_64 gen(24);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto kind = trial % 2 ? NormKind::L1 : NormKind::LInf;
    const auto x = random_vector(gen, 1 + trial % 5, kind, Field::Real, true);
    if (norm(x) == 0.0) continue;
    const auto w = random_vector(gen, x.size(), kind, Field::Real, true);
    const auto ext = extreme_support_functionals(x);
    // Random convex combination of extreme functionals is again in J(x).
    std::vector<double> weights(ext.size());
    double total = 0.0;
    for (auto& v : weights) total += (v = unit(gen));
    DualVector f(x.size());
    for (std::size_t k = 0; k < ext.size(); ++k)
      for (std::size_t j = 0; j < f.size(); ++j) f[j] += weights[k] / total * ext[k][j];
    const double v = evaluate_functional(f, w.entries()).real();
    const auto [lo, hi] = support_range(x, w).interval();
    CHECK(v >= lo - 1e-12);
    CHECK(v <= hi + 1e-12);
  }
}

TEST_CASE("smooth vectors have point ranges") {
  std::mt19937_64 gen(25);
  for (auto field : {Field::Real, Field::Complex}) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto kind = trial % 2 ? NormKind::L1 : NormKind::LInf;
      const auto x = random_vector(gen, 1 + trial % 4, kind, field, true);
      if (norm(x) == 0.0 || !is_smooth_vec(x)) continue;
      const auto w = random_vector(gen, x.size(), kind, field, false);
      const auto r = support_range(x, w);
      REQUIRE(r.atoms.size() == 1);
      CHECK(r.atoms[0].radius == 0.0);
    }
  }
}

TEST_CASE("semi-inner product axioms") {
  std::mt19937_64 gen(26);
  std::normal_distribution<double> normal;
  for (auto field : {Field::Real, Field::Complex}) {
    for (auto seeded : {false, true}) {
      const auto selector = seeded ? SemiInnerProductSelector::seeded(77) : SemiInnerProductSelector{};
      for (int trial = 0; trial < 100; ++trial) {
        const auto kind = trial % 2 ? NormKind::L1 : NormKind::LInf;
        const std::size_t k = 1 + trial % 5;
        const auto x = random_vector(gen, k, kind, field, trial % 3 == 0);
        const auto y = random_vector(gen, k, kind, field, false);
        const auto z = random_vector(gen, k, kind, field, false);
        const double nx = norm(x);
        const Scalar alpha = field == Field::Real ? Scalar(normal(gen), 0) : Scalar(normal(gen), normal(gen));
        const double scale = std::max({1.0, nx * nx, nx * norm(y), nx * norm(z)});
        const auto sip = [&](const FiniteVector& a, const FiniteVector& b) { return semi_inner_product(a, b, selector); };
        // [x, x] = ||x||^2
        CHECK(std::abs(sip(x, x) - nx * nx) <= 1e-12 * scale);
        // additivity and homogeneity in the first argument
        CHECK(std::abs(sip(y.plus(z), x) - sip(y, x) - sip(z, x)) <= 1e-12 * scale * 4);
        CHECK(std::abs(sip(y.scaled(alpha), x) - alpha * sip(y, x)) <= 1e-12 * scale * (1 + std::abs(alpha)) * 4);
        // conjugate homogeneity in the second argument
        if (std::abs(alpha) > 1e-3)
          CHECK(std::abs(sip(y, x.scaled(alpha)) - std::conj(alpha) * sip(y, x)) <=
                1e-12 * scale * (1 + std::abs(alpha)) * 4);
        // Cauchy-Schwarz
        CHECK(std::abs(sip(y, x)) <= nx * norm(y) * (1 + 1e-12) + 1e-12);
      }
    }
  }
}
