#include <random>

#include "bjg/extremality.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bjg;

namespace {

OperatorMatrix mat(std::size_t m, std::size_t n, std::vector<double> e) { return OperatorMatrix::real(m, n, e); }

void check_certificate(const OperatorMatrix& t, const ExtremalityCertificate& cert) {
  CHECK(cert.directional_maxima.size() == t.rows() * t.cols());
  if (cert.verdict == ExtremalityVerdict::Extreme) {
    CHECK_FALSE(cert.perturbation);
    for (double v : cert.directional_maxima) CHECK(v <= kExtremeZero);
    return;
  }
  REQUIRE(cert.verdict == ExtremalityVerdict::NotExtreme);
  REQUIRE(cert.perturbation);
  const auto& d = *cert.perturbation;
  CHECK(oracle::brute_op_norm(d) >= kPerturbationFloor);
  CHECK(oracle::brute_op_norm(t.plus(d)) <= 1.0 + 1e-9);
  CHECK(oracle::brute_op_norm(t.plus(d, -1.0)) <= 1.0 + 1e-9);
  const auto [plus, minus] = decompose_midpoint(cert, t);
  for (std::size_t k = 0; k < t.entries().size(); ++k)
    CHECK(std::abs(0.5 * (plus.entries()[k] + minus.entries()[k]) - t.entries()[k]) <= 1e-15);
}

SignedPermutation random_signed(std::mt19937_64& g, std::size_t n) {
  SignedPermutation p = SignedPermutation::identity(n);
  std::shuffle(p.source.begin(), p.source.end(), g);
  for (auto& ph : p.phase) ph = g() % 2 ? 1.0 : -1.0;
  return p;
}

}  // namespace

TEST_CASE("extreme fixture") {
  const auto t = mat(2, 2, {1, 0, 0, 0});
  const auto cert = is_extreme_contraction(t);
  CHECK(cert.verdict == ExtremalityVerdict::Extreme);
  check_certificate(t, cert);
  CHECK_THROWS_AS(decompose_midpoint(cert, t), Error);
}

TEST_CASE("diagonal midpoint") {
  const auto t = mat(2, 2, {0.5, 0, 0, 0.5});
  const auto cert = is_extreme_contraction(t);
  CHECK(cert.verdict == ExtremalityVerdict::NotExtreme);
  check_certificate(t, cert);
  const auto [plus, minus] = decompose_midpoint(cert, t);
  CHECK(oracle::brute_op_norm(plus) == doctest::Approx(1.0));
  CHECK(oracle::brute_op_norm(minus) == doctest::Approx(1.0));
}

TEST_CASE("single row midpoint") {
  const auto t = mat(1, 4, {0.5, 0.5, 0, 0});
  const auto cert = is_extreme_contraction(t);
  CHECK(cert.verdict == ExtremalityVerdict::NotExtreme);
  check_certificate(t, cert);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(is_extreme_contraction(mat(2, 2, {1, 1, 0, 0})), Error);
  CHECK_THROWS_AS(is_extreme_contraction(OperatorMatrix::zeros(2, 2, Field::Real)), Error);
  const auto cert = is_extreme_contraction(mat(2, 2, {1, 0, 0, 0}));
  CHECK_THROWS_AS(decompose_midpoint(cert, mat(1, 1, {1})), Error);
}

TEST_CASE("complex inputs are inconclusive by default") {
  const OperatorMatrix t(1, 2, {{0, 1}, {0, 0}}, Field::Complex);
  const auto cert = is_extreme_contraction(t);
  CHECK(cert.verdict == ExtremalityVerdict::InconclusiveComplex);
  CHECK_FALSE(cert.perturbation);
}

TEST_CASE("approximate complex mode on a single row") {
  ExtremalityOptions opt;
  opt.approximate_complex = true;
  const OperatorMatrix unit(1, 3, {{0, 1}, {0, 0}, {0, 0}}, Field::Complex);
  const auto a = is_extreme_contraction(unit, opt);
  CHECK(a.approximate);
  // The polygonal model cannot certify extremality on a curved face, but it must
  // never produce a perturbation that fails verification.
  CHECK(a.verdict != ExtremalityVerdict::NotExtreme);
  const OperatorMatrix half(1, 3, {{0, 0.5}, {0.5, 0}, {0, 0}}, Field::Complex);
  const auto b = is_extreme_contraction(half, opt);
  CHECK(b.verdict == ExtremalityVerdict::NotExtreme);
}

TEST_CASE("approximate complex mode: rotated diagonal and random rows") {
  ExtremalityOptions opt;
  opt.approximate_complex = true;
  const OperatorMatrix diag(2, 2, {{0, 0.5}, {0, 0}, {0, 0}, {std::sqrt(0.125), std::sqrt(0.125)}}, Field::Complex);
  const auto c = is_extreme_contraction(diag, opt);
  CHECK(c.verdict == ExtremalityVerdict::NotExtreme);
  std::mt19937_64 g(53);
  for (int trial = 0; trial < 8; ++trial) {
    const auto raw = gen::random_operator(g, 1, 2 + trial % 2, Field::Complex, true, 0.4);
    if (raw.is_zero()) continue;
    const auto t = gen::normalized(raw);
    const auto cert = is_extreme_contraction(t, opt);
    if (cert.verdict != ExtremalityVerdict::NotExtreme) continue;
    const auto& d = *cert.perturbation;
    CHECK(op_norm(d) >= kPerturbationFloor);
    CHECK(op_norm(t.plus(d)) <= cert.norm + 1e-9);
    CHECK(op_norm(t.plus(d, -1.0)) <= cert.norm + 1e-9);
  }
}

TEST_CASE("single rows: extreme iff one unimodular entry") {
  const std::vector<double> levels = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t count = 1;
    for (std::size_t j = 0; j < n; ++j) count *= levels.size();
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<double> row(n);
      std::size_t c = code;
      double l1 = 0.0;
      for (auto& v : row) {
        v = levels[c % levels.size()];
        c /= levels.size();
        l1 += std::abs(v);
      }
      if (l1 == 0.0) continue;
      for (auto& v : row) v /= l1;
      const auto t = mat(1, n, row);
      const auto cert = is_extreme_contraction(t);
      CHECK(cert.verdict == (oracle::single_row_extreme(t) ? ExtremalityVerdict::Extreme : ExtremalityVerdict::NotExtreme));
      check_certificate(t, cert);
    }
  }
}

TEST_CASE("float and rational arithmetic agree") {
  std::mt19937_64 g(51);
  ExtremalityOptions exact;
  exact.arithmetic = LpArithmetic::Rational;
  for (int trial = 0; trial < 40; ++trial) {
    const auto raw = gen::random_operator(g, 1 + trial % 3, 1 + trial % 3, Field::Real, true, 0.5);
    if (raw.is_zero()) continue;
    const auto t = gen::normalized(raw);
    const auto a = is_extreme_contraction(t);
    const auto b = is_extreme_contraction(t, exact);
    CHECK(a.verdict == b.verdict);
    check_certificate(t, b);
  }
}

TEST_CASE("verdicts are invariant under signed permutations and negation") {
  std::mt19937_64 g(52);
  std::size_t extreme = 0, total = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t m = 1 + trial % 3, n = 1 + (trial / 3) % 4;
    auto raw = gen::random_operator(g, m, n, Field::Real, true, 0.6);
    if (raw.is_zero()) continue;
    const auto t = gen::normalized(raw);
    const auto cert = is_extreme_contraction(t);
    check_certificate(t, cert);
    const auto moved = compose(random_signed(g, m), compose(t, random_signed(g, n)));
    CHECK(is_extreme_contraction(moved).verdict == cert.verdict);
    CHECK(is_extreme_contraction(t.scaled(-1.0)).verdict == cert.verdict);
    extreme += cert.verdict == ExtremalityVerdict::Extreme;
    ++total;
  }
  CHECK(extreme > 0);
  CHECK(extreme < total);
}

TEST_CASE("sign matrices normalized to norm one") {
  // Every 2x2 sign matrix scaled to norm one, checked against certificates only.
  for (int code = 0; code < 16; ++code) {
    std::vector<double> e(4);
    for (int k = 0; k < 4; ++k) e[k] = (code >> k) & 1 ? -1.0 : 1.0;
    const auto t = gen::normalized(mat(2, 2, e));
    check_certificate(t, is_extreme_contraction(t));
  }
}
