#pragma once

// Lower bounds for the Grothendieck constants G(m, n):
//   G(m, n) >= | sum_ij a_ij <x_i, y_j> |
// for any norm-one A in B(linf^n, l1^m) and unit vectors x_i, y_j of a real
// Hilbert space. Real field only.

#include <cstdint>
#include <vector>

#include "bjg/operator_space.hpp"

namespace bjg {

// m unit vectors x and n unit vectors y in R^dim.
struct VectorSystem {
  std::size_t dim = 0;
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> y;
};

// |sum_ij a_ij <x_i, y_j>|. Requires ||T|| = 1 +- 1e-6 (NotNormalized), matching
// sizes (ShapeMismatch) and unit vectors within 1e-12 (PreconditionViolated).
double bilinear_objective(const OperatorMatrix& t, const VectorSystem& system);

struct AscentResult {
  double value = 0.0;
  VectorSystem system;
  std::size_t iterations = 0;
  std::vector<double> trace;  // objective after every half-step
};

// Alternating maximisation x_i <- normalize(sum_j a_ij y_j), y_j <- normalize(sum_i a_ij x_i).
// A null start uses the aligned rank-one system built from a norming sign vector,
// whose value is ||T||. Stops when the relative gain drops below 1e-12.
AscentResult alternating_ascent(const OperatorMatrix& t, std::size_t dim, std::optional<std::uint64_t> seed,
                                std::size_t max_iters = 500);

enum class CandidateSource { UserSupplied, SignMatrix, CertifiedExtreme };

std::string_view to_string(CandidateSource source);

struct GrothendieckOptions {
  // Total ascent runs, split evenly between the sign-matrix and extreme pools
  // after the user-supplied candidates.
  std::size_t budget = 4096;
  std::size_t restarts_per_candidate = 32;
  std::size_t max_iters = 500;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::vector<OperatorMatrix> extra_candidates;
};

struct GrothendieckSearchResult {
  double best_value = 0.0;
  OperatorMatrix best_operator = OperatorMatrix::zeros(1, 1, Field::Real);
  VectorSystem best_system;
  CandidateSource best_source = CandidateSource::SignMatrix;
  std::size_t best_ordinal = 0;
  std::size_t candidates = 0;
  std::size_t extreme_candidates = 0;
  std::size_t restarts = 0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  // The sign pool was sampled or truncated to fit the budget.
  bool budget_exhausted = false;
};

// Real m x n only; n <= 16.
GrothendieckSearchResult lower_bound(std::size_t m, std::size_t n, const GrothendieckOptions& options = {});

// Walks from a random contraction to an extreme contraction by moving along
// certified perturbations to the boundary of each face. Returns nothing if the
// walk does not certify an extreme point within m*n + 1 steps.
std::optional<OperatorMatrix> random_extreme_contraction(std::size_t m, std::size_t n, std::uint64_t seed);

// T embedded in the top-left corner of a rows x cols zero matrix.
OperatorMatrix zero_padded(const OperatorMatrix& t, std::size_t rows, std::size_t cols);

}  // namespace bjg
