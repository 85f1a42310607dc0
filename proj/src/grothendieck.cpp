#include "bjg/grothendieck.hpp"

#include <cmath>
#include <random>

#include "bjg/extremality.hpp"
#include "bjg/parallel.hpp"

namespace bjg {

std::string_view to_string(CandidateSource source) {
  switch (source) {
    case CandidateSource::UserSupplied: return "user";
    case CandidateSource::SignMatrix: return "sign-matrix";
    case CandidateSource::CertifiedExtreme: return "certified-extreme";
  }
  return "unknown";
}

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

double length(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec random_unit(std::size_t dim, std::mt19937_64& gen) {
  std::normal_distribution<double> gauss;
  for (;;) {
    Vec v(dim);
    for (auto& c : v) c = gauss(gen);
    const double len = length(v);
    if (len > 1e-8) {
      for (auto& c : v) c /= len;
      return v;
    }
  }
}

void require_real_unit(const OperatorMatrix& t) {
  if (t.field() != Field::Real) throw Error(ErrorKind::ShapeMismatch, "the objective is real-only");
  if (std::abs(op_norm(t) - 1.0) > 1e-6) throw Error(ErrorKind::NotNormalized, "operator must have norm 1");
}

// Signed objective sum_ij a_ij <x_i, y_j>.
double signed_objective(const OperatorMatrix& t, const VectorSystem& s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) acc += t.at(i, j).real() * dot(s.x[i], s.y[j]);
  return acc;
}

VectorSystem aligned_start(const OperatorMatrix& t, std::size_t dim) {
  const Point eps = norming_set(t).representatives.front();
  const auto image = t.apply(eps);
  VectorSystem s{dim, {}, {}};
  for (const auto& z : image) {
    Vec v(dim, 0.0);
    v[0] = z.real() < 0.0 ? -1.0 : 1.0;
    s.x.push_back(std::move(v));
  }
  for (const auto& z : eps) {
    Vec v(dim, 0.0);
    v[0] = z.real();
    s.y.push_back(std::move(v));
  }
  return s;
}

// One half-step: every target vector becomes the normalised weighted sum of the
// sources; zero sums are redrawn, which cannot change the objective.
void update(std::vector<Vec>& targets, const std::vector<Vec>& sources, const OperatorMatrix& t, bool rows,
            std::mt19937_64& gen) {
  const std::size_t dim = sources.front().size();
  for (std::size_t a = 0; a < targets.size(); ++a) {
    Vec v(dim, 0.0);
    for (std::size_t b = 0; b < sources.size(); ++b) {
      const double coef = rows ? t.at(a, b).real() : t.at(b, a).real();
      if (coef == 0.0) continue;
      for (std::size_t k = 0; k < dim; ++k) v[k] += coef * sources[b][k];
    }
    const double len = length(v);
    if (len <= 1e-300) {
      targets[a] = random_unit(dim, gen);
      continue;
    }
    for (auto& c : v) c /= len;
    targets[a] = std::move(v);
  }
}

}  // namespace

double bilinear_objective(const OperatorMatrix& t, const VectorSystem& system) {
  require_real_unit(t);
  if (system.x.size() != t.rows() || system.y.size() != t.cols())
    throw Error(ErrorKind::ShapeMismatch, "vector system does not match the operator");
  for (const auto* family : {&system.x, &system.y}) {
    for (const auto& v : *family) {
      if (v.size() != system.dim) throw Error(ErrorKind::ShapeMismatch, "vector of the wrong dimension");
      if (std::abs(length(v) - 1.0) > 1e-12) throw Error(ErrorKind::PreconditionViolated, "vectors must be unit");
    }
  }
  return std::abs(signed_objective(t, system));
}

AscentResult alternating_ascent(const OperatorMatrix& t, std::size_t dim, std::optional<std::uint64_t> seed,
                                std::size_t max_iters) {
  require_real_unit(t);
  if (dim == 0) throw Error(ErrorKind::PreconditionViolated, "dimension must be positive");
  std::mt19937_64 gen(seed.value_or(0));
  AscentResult out;
  if (seed) {
    out.system.dim = dim;
    for (std::size_t i = 0; i < t.rows(); ++i) out.system.x.push_back(random_unit(dim, gen));
    for (std::size_t j = 0; j < t.cols(); ++j) out.system.y.push_back(random_unit(dim, gen));
  } else {
    out.system = aligned_start(t, dim);
  }

  double value = std::abs(signed_objective(t, out.system));
  out.trace.push_back(value);
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    const double before = value;
    update(out.system.x, out.system.y, t, true, gen);
    out.trace.push_back(signed_objective(t, out.system));
    update(out.system.y, out.system.x, t, false, gen);
    value = signed_objective(t, out.system);
    out.trace.push_back(value);
    out.iterations = iter + 1;
    if (value - before <= 1e-12 * std::max(1.0, std::abs(value))) break;
  }
  out.value = std::abs(value);
  return out;
}

OperatorMatrix zero_padded(const OperatorMatrix& t, std::size_t rows, std::size_t cols) {
  if (rows < t.rows() || cols < t.cols()) throw Error(ErrorKind::ShapeMismatch, "padding cannot shrink");
  OperatorMatrix out = OperatorMatrix::zeros(rows, cols, t.field());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) out = out.with_entry(i, j, t.at(i, j));
  return out;
}

std::optional<OperatorMatrix> random_extreme_contraction(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> entries(m * n);
  for (auto& v : entries) v = gauss(gen);
  OperatorMatrix t = OperatorMatrix::real(m, n, entries);
  if (t.is_zero()) return std::nullopt;
  t = t.scaled(1.0 / op_norm(t));

  ExtremalityOptions quick;
  quick.stop_at_first_perturbation = true;
  for (std::size_t step = 0; step <= m * n; ++step) {
    ExtremalityCertificate cert;
    try {
      cert = is_extreme_contraction(t, quick);
    } catch (const Error& e) {
      // Within rounding of a face but not on it: no perturbation above the floor.
      if (e.kind() == ErrorKind::WitnessNotFound) return std::nullopt;
      throw;
    }
    if (cert.verdict == ExtremalityVerdict::Extreme) return t;
    const OperatorMatrix& d = *cert.perturbation;
    // ||T + sD|| is convex in s and at most 1 on [-1, 1]; push s to the boundary.
    auto inside = [&](double s) { return op_norm(t.plus(d, s)) <= 1.0 + 1e-12; };
    double lo = 1.0, hi = 2.0;
    while (inside(hi) && hi < 1e6) {
      lo = hi;
      hi *= 2.0;
    }
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      (inside(mid) ? lo : hi) = mid;
    }
    t = t.plus(d, lo);
    // Entries the step was meant to cancel come out as round-off; snap them to zero.
    std::vector<Scalar> snapped(t.entries().begin(), t.entries().end());
    for (auto& z : snapped)
      if (std::abs(z) <= 1e-9) z = 0.0;
    t = OperatorMatrix(m, n, std::move(snapped), Field::Real);
    t = t.scaled(1.0 / op_norm(t));
  }
  return std::nullopt;
}

GrothendieckSearchResult lower_bound(std::size_t m, std::size_t n, const GrothendieckOptions& options) {
  if (m < 1 || n < 1 || m > kMaxDimension || n > kMaxDimension)
    throw Error(ErrorKind::DimensionError, "dimensions must lie in 1..16");
  const std::size_t per = std::max<std::size_t>(1, options.restarts_per_candidate);

  struct Candidate {
    OperatorMatrix op;
    CandidateSource source;
  };
  std::vector<Candidate> pool;
  for (const auto& user : options.extra_candidates) {
    if (user.rows() != m || user.cols() != n || user.field() != Field::Real)
      throw Error(ErrorKind::ShapeMismatch, "extra candidate has the wrong shape or field");
    if (user.is_zero()) throw Error(ErrorKind::ZeroOperator, "extra candidate is zero");
    pool.push_back({user.scaled(1.0 / op_norm(user)), CandidateSource::UserSupplied});
  }

  GrothendieckSearchResult result;
  result.seed = options.seed;
  const std::size_t spent = pool.size() * per;
  const std::size_t remaining = options.budget > spent ? options.budget - spent : 0;
  // At least the all-ones matrix, whose aligned rank-one system already reaches 1.
  const std::size_t sign_slots = std::max<std::size_t>(1, (remaining / 2) / per);
  const std::size_t extreme_slots = (remaining - remaining / 2) / per;

  // Sign matrices up to row and column sign changes: first row and column fixed to +1.
  const std::size_t free_bits = (m - 1) * (n - 1);
  const bool exhaustive = m * n <= 16 && (std::uint64_t{1} << free_bits) <= sign_slots;
  const std::size_t sign_count = exhaustive ? std::size_t{1} << free_bits : sign_slots;
  result.budget_exhausted = !exhaustive;
  std::mt19937_64 sign_gen(mix_seed(options.seed, 0x51a7));
  for (std::size_t code = 0; code < sign_count; ++code) {
    std::vector<double> entries(m * n, 1.0);
    std::size_t bit = 0;
    for (std::size_t i = 1; i < m; ++i) {
      for (std::size_t j = 1; j < n; ++j, ++bit) {
        const bool flip = exhaustive ? ((code >> bit) & 1U) : code > 0 && (sign_gen() & 1U);
        if (flip) entries[i * n + j] = -1.0;
      }
    }
    const OperatorMatrix a = OperatorMatrix::real(m, n, entries);
    pool.push_back({a.scaled(1.0 / op_norm(a)), CandidateSource::SignMatrix});
  }

  const auto walks = parallel_map(extreme_slots, options.workers, [&](std::size_t k) {
    return random_extreme_contraction(m, n, mix_seed(options.seed, 0xe000 + k));
  });
  for (const auto& w : walks) {
    if (!w) continue;
    pool.push_back({*w, CandidateSource::CertifiedExtreme});
    ++result.extreme_candidates;
  }
  result.candidates = pool.size();

  const std::size_t dim = m + n;
  const auto runs = parallel_map(pool.size(), options.workers, [&](std::size_t ordinal) {
    AscentResult best;
    std::size_t iterations = 0;
    for (std::size_t r = 0; r < per; ++r) {
      std::optional<std::uint64_t> start;
      if (r > 0) start = mix_seed(mix_seed(options.seed, ordinal), r);
      AscentResult run = alternating_ascent(pool[ordinal].op, dim, start, options.max_iters);
      iterations += run.iterations;
      if (r == 0 || run.value > best.value) best = std::move(run);
    }
    return std::pair{std::move(best), iterations};
  });

  bool found = false;
  for (std::size_t ordinal = 0; ordinal < runs.size(); ++ordinal) {
    const auto& [run, iterations] = runs[ordinal];
    result.iterations += iterations;
    result.restarts += per;
    if (!found || run.value > result.best_value) {
      found = true;
      result.best_value = run.value;
      result.best_operator = pool[ordinal].op;
      result.best_system = run.system;
      result.best_source = pool[ordinal].source;
      result.best_ordinal = ordinal;
    }
  }
  return result;
}

}  // namespace bjg
