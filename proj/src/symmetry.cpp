#include "bjg/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bjg/extremality.hpp"

namespace bjg {

std::string_view to_string(ViolationSide side) { return side == ViolationSide::Left ? "left" : "right"; }

std::string_view to_string(ConstructionPath path) {
  switch (path) {
    case ConstructionPath::Aligned: return "aligned";
    case ConstructionPath::SharedNormingPair: return "shared-norming-pair";
    case ConstructionPath::ConcentratedImage: return "concentrated-image";
    case ConstructionPath::FallbackSearch: return "fallback-search";
  }
  return "unknown";
}

std::string_view to_string(PairRelation relation) {
  switch (relation) {
    case PairRelation::Mutual: return "mutual";
    case PairRelation::LeftOnly: return "left-only";
    case PairRelation::RightOnly: return "right-only";
    case PairRelation::None: return "none";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kPairTries = 256;
constexpr std::size_t kRepresentativeCap = 64;
constexpr std::size_t kEnumeratedCap = 20000;

bool same_line(const Point& a, const Point& b) {
  Scalar acc{0.0, 0.0};
  for (std::size_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
  return std::abs(acc) >= static_cast<double>(a.size()) * (1.0 - 1e-9);
}

// Verified report, or nothing if s does not violate the requested symmetry.
std::optional<WitnessReport> verify_candidate(const OperatorMatrix& t, const OperatorMatrix& s, ViolationSide side,
                                              const OperatorOptions& op) {
  if (s.is_zero()) return std::nullopt;
  WitnessReport report{.subject = t, .witness = s};
  report.direction = side;
  if (side == ViolationSide::Right) {
    report.witness_to_subject = operator_bj_orthogonality(s, t, op);
    if (!report.witness_to_subject.orthogonal) return std::nullopt;
    report.subject_to_witness = operator_bj_orthogonality(t, s, op);
    if (report.subject_to_witness.orthogonal) return std::nullopt;
  } else {
    report.subject_to_witness = operator_bj_orthogonality(t, s, op);
    if (!report.subject_to_witness.orthogonal) return std::nullopt;
    report.witness_to_subject = operator_bj_orthogonality(s, t, op);
    if (report.witness_to_subject.orthogonal) return std::nullopt;
  }
  report.approximate = t.field() == Field::Complex;
  return report;
}

// S = y conj(x)^T / n, so that S x = y and S attains its norm only on the line of x.
OperatorMatrix rank_one(std::span<const Scalar> y, std::span<const Scalar> x, Field field) {
  const std::size_t m = y.size(), n = x.size();
  std::vector<Scalar> entries(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = y[i] * std::conj(x[j]) / static_cast<double>(n);
  return OperatorMatrix(m, n, std::move(entries), field);
}

std::vector<Point> independent_family(const std::vector<Point>& points) {
  std::vector<Point> family;
  for (const auto& p : points) {
    family.push_back(p);
    if (point_rank(family) < family.size()) family.pop_back();
  }
  return family;
}

bool isolated_at(const OperatorMatrix& s, const Point& x, const OperatorOptions& op) {
  if (s.is_zero()) return false;
  const auto ns = norming_set(s, op);
  return std::all_of(ns.representatives.begin(), ns.representatives.end(),
                     [&](const Point& p) { return same_line(p, x); });
}

std::optional<WitnessReport> aligned_right_witness(const OperatorMatrix& t, const NormingSet& ns,
                                                   const SymmetryOptions& options) {
  const std::size_t n = t.cols();
  if (n > kMaxAlignDimension) return std::nullopt;
  const auto family = independent_family(ns.representatives);
  const std::size_t k = family.size();
  if (k >= n) return std::nullopt;
  const auto basis = canonical_extreme_basis(n);

  // Alignment depends on the relative signs of the family members.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k - 1)); ++mask) {
    std::vector<Point> points = family;
    for (std::size_t i = 1; i < k; ++i) {
      if ((mask >> (i - 1)) & 1U)
        for (auto& z : points[i]) z = -z;
    }
    const auto p = signed_permutation_align(points, n);
    if (!p) continue;
    const OperatorMatrix aligned = compose(t, p->inverse());
    const ProductVector image = gamma_embed(aligned, basis);
    const auto norming = norming_components(image, options.op.tol);

    for (std::size_t ell = 0; ell < n; ++ell) {
      if (std::binary_search(norming.begin(), norming.end(), ell)) continue;
      std::vector<DeltaStep> schedule;
      double delta = options.initial_delta;
      for (int step = 0; step <= options.max_halvings; ++step, delta *= 0.5) {
        std::optional<ProductVector> y;
        try {
          y = dominating_orthogonal_witness(image, ell, 1.0, options.seed, options.op.tol, delta);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DegenerateComponent) throw;
          break;
        }
        const OperatorMatrix candidate = gamma_invert(*y, basis);
        const bool isolated = isolated_at(candidate, basis[ell], options.op);
        schedule.push_back({delta, isolated});
        if (!isolated) continue;
        auto report = verify_candidate(t, compose(candidate, *p), ViolationSide::Right, options.op);
        if (!report) continue;
        double trailing = delta;
        for (int extra = 0; extra < options.trailing_steps; ++extra) {
          trailing *= 0.5;
          const ProductVector z = dominating_orthogonal_witness(image, ell, 1.0, options.seed, options.op.tol, trailing);
          schedule.push_back({trailing, isolated_at(gamma_invert(z, basis), basis[ell], options.op)});
        }
        report->path = ConstructionPath::Aligned;
        report->delta = delta;
        report->ell = ell;
        report->permutation = *p;
        report->delta_schedule = std::move(schedule);
        return report;
      }
    }
  }
  return std::nullopt;
}

std::vector<Scalar> unit_choices(Field field) {
  if (field == Field::Real) return {Scalar{1.0, 0.0}, Scalar{-1.0, 0.0}};
  std::vector<Scalar> out;
  for (int p = 0; p < 4; ++p) out.push_back(std::polar(1.0, std::numbers::pi * p / 2.0));
  return out;
}

// Extreme points of linf^n up to the leading unimodular factor.
std::vector<Point> extreme_representatives(std::size_t n, Field field) {
  const auto units = unit_choices(field);
  std::vector<Point> out;
  std::vector<std::size_t> digit(n - 1, 0);
  for (;;) {
    Point x(n, Scalar{1.0, 0.0});
    for (std::size_t j = 1; j < n; ++j) x[j] = units[digit[j - 1]];
    out.push_back(std::move(x));
    std::size_t r = 0;
    while (r < digit.size() && ++digit[r] == units.size()) digit[r++] = 0;
    if (r == digit.size()) break;
  }
  return out;
}

std::optional<WitnessReport> fallback_search(const OperatorMatrix& t, ViolationSide side,
                                             const SymmetryOptions& options, std::size_t& tried) {
  const std::size_t m = t.rows(), n = t.cols();
  const Field field = t.field();
  auto attempt = [&](const OperatorMatrix& s) {
    ++tried;
    auto report = verify_candidate(t, s, side, options.op);
    if (report) report->path = ConstructionPath::FallbackSearch;
    return report;
  };

  // Phase-aligned matrix units.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar u = std::abs(t.at(i, j)) > 0.0 ? unit_phase(t.at(i, j)) : Scalar{1.0, 0.0};
      for (Scalar sign : {Scalar{1.0, 0.0}, Scalar{-1.0, 0.0}}) {
        auto zero = OperatorMatrix::zeros(m, n, field);
        if (auto r = attempt(zero.with_entry(i, j, sign * u))) return r;
      }
    }
  }

  // Rank-one operators y x^T / n with y in {-1, 0, 1}^m and x an extreme point.
  const auto points = extreme_representatives(n, field);
  const double patterns = std::pow(3.0, static_cast<double>(m));
  if (patterns * static_cast<double>(points.size()) <= static_cast<double>(kEnumeratedCap)) {
    for (const auto& x : points) {
      std::vector<int> digit(m, 0);
      for (;;) {
        std::size_t r = 0;
        while (r < m && ++digit[r] == 3) digit[r++] = 0;
        if (r == m) break;
        std::vector<Scalar> y(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = static_cast<double>(digit[i] == 2 ? -1 : digit[i]);
        if (auto rep = attempt(rank_one(y, x, field))) return rep;
      }
    }
  }

  // Seeded draws: rank-one operators with random zero patterns, sometimes plus a matrix unit.
  std::mt19937_64 gen(mix_seed(options.seed, 0x5eed));
  std::normal_distribution<double> gauss;
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_point(0, points.size() - 1);
  for (std::size_t draw = 0; draw < options.max_draws; ++draw) {
    const Point& x = points[pick_point(gen)];
    std::vector<Scalar> y(m, Scalar{0.0, 0.0});
    for (auto& v : y) {
      if (coin(gen)) continue;
      v = field == Field::Real ? Scalar{gauss(gen), 0.0} : Scalar{gauss(gen), gauss(gen)};
    }
    OperatorMatrix s = rank_one(y, x, field);
    if (coin(gen)) {
      const std::size_t i = std::uniform_int_distribution<std::size_t>(0, m - 1)(gen);
      const std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
      s = s.with_entry(i, j, s.at(i, j) + 0.5 * unit(gen) * (coin(gen) ? 1.0 : -1.0));
    }
    if (auto r = attempt(s)) return r;
  }
  return std::nullopt;
}

}  // namespace

WitnessReport right_symmetry_witness(const OperatorMatrix& t, const SymmetryOptions& options) {
  const std::size_t n = t.cols();
  if (n < 4) throw Error(ErrorKind::PreconditionViolated, "right-symmetry witnesses need n >= 4");
  const NormingSet ns = norming_set(t, options.op);
  if (std::abs(ns.norm - 1.0) > 1e-6) throw Error(ErrorKind::PreconditionViolated, "operator must have norm 1");
  if (point_rank(ns.representatives) == n) {
    if (t.field() == Field::Complex)
      throw Error(ErrorKind::PreconditionViolated, "complex operator normed on n independent points");
    ExtremalityOptions eo;
    eo.op = options.op;
    if (is_extreme_contraction(t, eo).verdict == ExtremalityVerdict::Extreme)
      throw Error(ErrorKind::PreconditionViolated, "operator is an extreme contraction");
  }

  if (auto report = aligned_right_witness(t, ns, options)) return *report;
  std::size_t tried = 0;
  if (auto report = fallback_search(t, ViolationSide::Right, options, tried)) {
    report->candidates_tried = tried;
    return *report;
  }
  throw Error(ErrorKind::WitnessNotFound, "no right-symmetry witness after " + std::to_string(tried) + " candidates");
}

WitnessReport left_symmetry_witness(const OperatorMatrix& t, const SymmetryOptions& options) {
  const NormingSet ns = norming_set(t, options.op);
  if (operator_is_smooth(t, options.op))
    throw Error(ErrorKind::PreconditionViolated, "smooth operators are left-symmetric");
  const std::size_t n = t.cols();
  const auto& reps = ns.representatives;
  std::size_t tried = 0;

  auto finish = [&](std::optional<WitnessReport> report, ConstructionPath path) {
    report->path = path;
    report->candidates_tried = tried;
    return *report;
  };

  // S = T x w^T with w = p conj(x), sum p = 1, p >= 0, so S x = T x; choosing
  // sum p_k conj(x_k) x'_k = 0 makes S x' = 0.
  if (reps.size() >= 2) {
    for (std::size_t a = 0; a < reps.size() && a < kRepresentativeCap; ++a) {
      for (std::size_t b = 0; b < reps.size() && tried < kPairTries; ++b) {
        if (a == b || same_line(reps[a], reps[b])) continue;
        const Point& x = reps[a];
        const Point& xp = reps[b];
        std::vector<double> weight(n, 0.0);
        if (t.field() == Field::Real) {
          std::size_t differ = 0;
          for (std::size_t k = 0; k < n; ++k) differ += x[k] != xp[k] ? 1 : 0;
          for (std::size_t k = 0; k < n; ++k)
            weight[k] = x[k] != xp[k] ? 0.5 / static_cast<double>(differ) : 0.5 / static_cast<double>(n - differ);
        } else {
          std::vector<DiskAtom> atoms;
          for (std::size_t k = 0; k < n; ++k) atoms.push_back({std::conj(x[k]) * xp[k], 0.0});
          const auto hull = zero_in_convex_union(atoms, Field::Complex, options.op.tol);
          if (!hull.contains_zero) continue;
          weight = hull.combiner->weights;
        }
        const auto image = t.apply(x);
        std::vector<Scalar> entries(t.rows() * n);
        for (std::size_t i = 0; i < t.rows(); ++i)
          for (std::size_t k = 0; k < n; ++k) entries[i * n + k] = image[i] * weight[k] * std::conj(x[k]);
        ++tried;
        auto report = verify_candidate(t, OperatorMatrix(t.rows(), n, std::move(entries), t.field()),
                                       ViolationSide::Left, options.op);
        if (report) return finish(std::move(report), ConstructionPath::SharedNormingPair);
      }
    }
  }

  // S = y conj(x)^T / n where T x has a zero coordinate k0:
  // y = e_k0 + sgn(T x) / (2 |supp|) gives T x _|_ y and not y _|_ T x.
  for (std::size_t a = 0; a < reps.size() && a < kRepresentativeCap; ++a) {
    const FiniteVector image = t.image(reps[a]);
    const auto supp = support_indices(image, options.op.tol);
    if (supp.size() == image.size()) continue;
    std::vector<Scalar> y(image.size(), Scalar{0.0, 0.0});
    for (std::size_t k : supp) y[k] = unit_phase(image[k]) / (2.0 * static_cast<double>(supp.size()));
    std::size_t zero = 0;
    while (std::binary_search(supp.begin(), supp.end(), zero)) ++zero;
    y[zero] = 1.0;
    ++tried;
    auto report = verify_candidate(t, rank_one(y, reps[a], t.field()), ViolationSide::Left, options.op);
    if (report) return finish(std::move(report), ConstructionPath::ConcentratedImage);
  }

  if (auto report = fallback_search(t, ViolationSide::Left, options, tried)) {
    report->candidates_tried = tried;
    return *report;
  }
  throw Error(ErrorKind::WitnessNotFound, "no left-symmetry witness after " + std::to_string(tried) + " candidates");
}

SymmetryPair check_symmetry_pair(const OperatorMatrix& t, const OperatorMatrix& s, const OperatorOptions& options) {
  if (t.is_zero() || s.is_zero()) throw Error(ErrorKind::ZeroOperator, "symmetry pairs need nonzero operators");
  SymmetryPair out;
  out.forward = operator_bj_orthogonality(t, s, options);
  out.backward = operator_bj_orthogonality(s, t, options);
  const bool f = out.forward.orthogonal, b = out.backward.orthogonal;
  out.relation = f && b ? PairRelation::Mutual : f ? PairRelation::LeftOnly : b ? PairRelation::RightOnly : PairRelation::None;
  return out;
}

}  // namespace bjg
