#include <random>

#include "bjg/feasibility.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bjg;

TEST_CASE("lp: single bound") {
  LinearProgram lp{.objective = {1.0}};
  lp.add_row({1.0}, 3.0);
  const auto r = lp_maximize(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.argument.size() == 1);
}

TEST_CASE("lp: simplex constraint") {
  LinearProgram lp{.objective = {1.0, 1.0}};
  lp.add_row({1.0, 1.0}, 1.0);
  const auto r = lp_maximize(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lp: contradictory bounds are infeasible") {
  LinearProgram lp{.objective = {1.0}};
  lp.add_row({-1.0}, -1.0);
  lp.add_row({1.0}, 0.0);
  for (auto arith : {LpArithmetic::Float, LpArithmetic::Rational}) {
    const auto r = lp_maximize(lp, arith);
    CHECK(r.status == LpStatus::Infeasible);
    CHECK(r.argument.empty());
  }
}

TEST_CASE("lp: unbounded ray") {
  LinearProgram lp{.objective = {1.0, 0.0}};
  lp.add_row({0.0, 1.0}, 1.0);
  const auto r = lp_maximize(lp);
  CHECK(r.status == LpStatus::Unbounded);
  CHECK(r.argument.empty());
}

TEST_CASE("lp: free variables with box bounds") {
  LinearProgram lp{.objective = {1.0, -2.0}, .lower = {-kInf, -1.0}, .upper = {kInf, 1.0}};
  lp.add_row({1.0, 1.0}, 0.5);
  const auto r = lp_maximize(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(3.5));
  CHECK(r.argument[1] == doctest::Approx(-1.0));
}

TEST_CASE("lp: random instances match vertex enumeration") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<std::size_t> vars(1, 6), cons(1, 10);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t nv = vars(gen), nc = cons(gen);
    LinearProgram lp;
    for (std::size_t j = 0; j < nv; ++j) {
      lp.objective.push_back(small(gen));
      lp.lower.push_back(trial % 2 ? -2.0 : 0.0);
      lp.upper.push_back(2.0 + (j % 3));
    }
    for (std::size_t i = 0; i < nc; ++i) {
      std::vector<double> row(nv);
      for (auto& a : row) a = small(gen);
      lp.add_row(row, small(gen));
    }
    const auto expected = oracle::brute_lp_max(lp);
    for (auto arith : {LpArithmetic::Float, LpArithmetic::Rational}) {
      const auto r = lp_maximize(lp, arith);
      if (!expected) {
        CHECK(r.status == LpStatus::Infeasible);
        continue;
      }
      REQUIRE(r.status == LpStatus::Optimal);
      CHECK(r.value == doctest::Approx(*expected).epsilon(1e-9));
      double obj = 0.0;
      for (std::size_t j = 0; j < nv; ++j) obj += lp.objective[j] * r.argument[j];
      CHECK(obj == doctest::Approx(r.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("hull: symmetric points") {
  const std::vector<DiskAtom> atoms = {{{1, 0}, 0}, {{-1, 0}, 0}};
  const auto h = zero_in_convex_union(atoms, Field::Real);
  REQUIRE(h.contains_zero);
  REQUIRE(h.combiner);
  CHECK(h.combiner->weights[0] == doctest::Approx(0.5));
  CHECK(h.combiner->weights[1] == doctest::Approx(0.5));
}

TEST_CASE("hull: far disk") {
  const std::vector<DiskAtom> atoms = {{{2, 0}, 1}};
  for (auto f : {Field::Real, Field::Complex}) {
    const auto h = zero_in_convex_union(atoms, f);
    CHECK_FALSE(h.contains_zero);
    CHECK_FALSE(h.combiner);
    CHECK(h.gap == doctest::Approx(1.0));
  }
}

TEST_CASE("hull: imaginary pair") {
  const std::vector<DiskAtom> atoms = {{{0, 1}, 0}, {{0, -1}, 0}, {{1, 0}, 0}};
  const auto h = zero_in_convex_union(atoms, Field::Complex);
  REQUIRE(h.contains_zero);
  Scalar c{};
  for (std::size_t k = 0; k < atoms.size(); ++k) c += h.combiner->weights[k] * atoms[k].center;
  CHECK(std::abs(c) <= 1e-12);
  CHECK(h.combiner->weights[0] == doctest::Approx(0.5));
  CHECK(h.combiner->weights[2] == doctest::Approx(0.0));
}

TEST_CASE("hull: empty input") {
  CHECK_THROWS_AS(zero_in_convex_union({}, Field::Real), Error);
}

TEST_CASE("hull: triangle of points around the origin") {
  const std::vector<DiskAtom> atoms = {{{1, 0}, 0}, {{-0.5, 0.8}, 0}, {{-0.5, -0.8}, 0}};
  const auto h = zero_in_convex_union(atoms, Field::Complex);
  CHECK(h.contains_zero);
}

TEST_CASE("segment gap in closed form") {
  const auto [t, v] = min_gap_on_segment({{1, 1}, 0}, {{-1, 1}, 0});
  CHECK(t == doctest::Approx(0.5));
  CHECK(v == doctest::Approx(1.0));
}

namespace {

// Whenever true: weights on the simplex and |sum w c| <= sum w r to 1e-12 (relative).
void check_sound(std::span<const DiskAtom> atoms, const HullMembership& h) {
  REQUIRE(h.combiner);
  double total = 0.0, r = 0.0, scale = 1.0;
  Scalar c{};
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double w = h.combiner->weights[k];
    CHECK(w >= 0.0);
    total += w;
    c += w * atoms[k].center;
    r += w * atoms[k].radius;
    scale = std::max(scale, std::abs(atoms[k].center) + atoms[k].radius);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(c) - r <= 1e-9 * scale + 1e-12);
}

}  // namespace

TEST_CASE("hull: soundness and sampling completeness on random atoms") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<std::size_t> count(1, 6);
  std::normal_distribution<double> normal;
  std::size_t positives = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const bool integral = trial % 2 == 0;
    std::vector<DiskAtom> atoms(count(gen));
    for (auto& a : atoms) {
      a.center = integral ? Scalar(small(gen), small(gen)) : Scalar(normal(gen), normal(gen));
      a.radius = integral ? std::abs(small(gen)) * 0.5 : (trial % 3 ? 0.0 : std::abs(normal(gen)) * 0.3);
    }
    const auto h = zero_in_convex_union(atoms, Field::Complex);
    if (h.contains_zero) {
      ++positives;
      check_sound(atoms, h);
    }
    const double sampled = oracle::sampled_hull_gap(atoms, 100000, mix_seed(5, trial));
    if (sampled <= -1e-9) CHECK(h.contains_zero);
    // Negative verdicts carry the exact gap, which no sample can undercut.
    if (!h.contains_zero) CHECK(h.gap <= sampled + 1e-9);
  }
  CHECK(positives > 50);
}

TEST_CASE("hull: real mode agrees with the interval test") {
  std::mt19937_64 gen(9);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<DiskAtom> atoms(1 + trial % 5);
    double lo = kInf, hi = -kInf;
    for (auto& a : atoms) {
      a.center = Scalar(small(gen), 0.0);
      a.radius = std::abs(small(gen)) / 3.0;
      lo = std::min(lo, a.center.real() - a.radius);
      hi = std::max(hi, a.center.real() + a.radius);
    }
    const auto h = zero_in_convex_union(atoms, Field::Real);
    CHECK(h.contains_zero == (lo <= 0.0 && 0.0 <= hi));
    if (h.contains_zero) check_sound(atoms, h);
  }
}
