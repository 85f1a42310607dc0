#include "bjg/operator_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace bjg {

namespace {

constexpr double kUnimodularSlack = 1e-9;

void check_dimension(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1 || rows > kMaxDimension || cols > kMaxDimension)
    throw Error(ErrorKind::DimensionError, "operator dimensions must lie in 1..16");
}

void require_nonzero(const OperatorMatrix& t) {
  if (t.is_zero()) throw Error(ErrorKind::ZeroOperator, "operator must be nonzero");
}

double image_l1(const OperatorMatrix& t, std::span<const Scalar> x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    Scalar s{0.0, 0.0};
    for (std::size_t j = 0; j < t.cols(); ++j) s += t.at(i, j) * x[j];
    acc += std::abs(s);
  }
  return acc;
}

double image_l1_real(const OperatorMatrix& t, std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < t.cols(); ++j) s += t.at(i, j).real() * x[j];
    acc += std::abs(s);
  }
  return acc;
}

// Sign vector number `code` with first entry +1; bit j-1 set means entry j is -1.
void sign_vector(std::uint64_t code, std::vector<double>& out) {
  out[0] = 1.0;
  for (std::size_t j = 1; j < out.size(); ++j) out[j] = (code >> (j - 1)) & 1U ? -1.0 : 1.0;
}

Point normalize_phase(Point x) {
  const Scalar rot = std::conj(unit_phase(x[0]));
  for (auto& z : x) z = unit_phase(z * rot);
  return x;
}

struct ComplexSearch {
  double best = 0.0;
  std::vector<std::pair<double, Point>> maxima;
};

// Coordinate-wise phase ascent from one start; returns the local maximum.
std::pair<double, Point> phase_ascent(const OperatorMatrix& t, Point x, int grid) {
  const std::size_t n = t.cols();
  const std::size_t m = t.rows();
  double value = image_l1(t, x);
  std::vector<Scalar> rest(m), column(m);
  auto eval = [&](double theta) {
    const Scalar e = std::polar(1.0, theta);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += std::abs(rest[i] + e * column[i]);
    return acc;
  };
  for (int sweep = 0; sweep < 200; ++sweep) {
    const double before = value;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        column[i] = t.at(i, j);
        rest[i] = Scalar{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k)
          if (k != j) rest[i] += t.at(i, k) * x[k];
      }
      const double current_theta = std::arg(x[j]);
      double best_theta = current_theta;
      double best = eval(current_theta);
      const double step = 2.0 * std::numbers::pi / grid;
      for (int g = 0; g < grid; ++g) {
        const double theta = g * step;
        const double v = eval(theta);
        if (v > best) {
          best = v;
          best_theta = theta;
        }
      }
      // Golden-section refinement around the best grid phase.
      double lo = best_theta - step, hi = best_theta + step;
      const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
      double a = hi - ratio * (hi - lo), b = lo + ratio * (hi - lo);
      double fa = eval(a), fb = eval(b);
      for (int it = 0; it < 80; ++it) {
        if (fa < fb) {
          lo = a;
          a = b;
          fa = fb;
          b = lo + ratio * (hi - lo);
          fb = eval(b);
        } else {
          hi = b;
          b = a;
          fb = fa;
          a = hi - ratio * (hi - lo);
          fa = eval(a);
        }
      }
      const double mid = 0.5 * (lo + hi);
      const double fm = eval(mid);
      if (fm > best) {
        best = fm;
        best_theta = mid;
      }
      x[j] = std::polar(1.0, best_theta);
      value = best;
    }
    if (value - before <= 1e-15 * std::max(1.0, value)) break;
  }
  return {value, x};
}

ComplexSearch complex_search(const OperatorMatrix& t, const OperatorOptions& options) {
  const std::size_t n = t.cols();
  const int grid = std::max(options.phase_grid, 4);
  std::vector<Point> starts;
  // Full grid for tiny n; otherwise real sign vectors plus seeded random phases.
  double full = 1.0;
  for (std::size_t j = 1; j < n; ++j) full *= grid;
  if (full <= 4096.0) {
    std::vector<int> digit(n, 0);
    for (;;) {
      Point x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = std::polar(1.0, 2.0 * std::numbers::pi * digit[j] / grid);
      starts.push_back(std::move(x));
      std::size_t k = 1;
      while (k < n && ++digit[k] == grid) digit[k++] = 0;
      if (k >= n) break;
    }
  } else {
    const std::uint64_t signs = std::min<std::uint64_t>(std::uint64_t{1} << (n - 1), 256);
    std::vector<double> eps(n);
    for (std::uint64_t code = 0; code < signs; ++code) {
      sign_vector(code, eps);
      starts.emplace_back(eps.begin(), eps.end());
    }
    std::mt19937_64 gen(mix_seed(options.seed, 0xC0FFEE));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int r = 0; r < 64; ++r) {
      Point x(n);
      x[0] = 1.0;
      for (std::size_t j = 1; j < n; ++j) x[j] = std::polar(1.0, angle(gen));
      starts.push_back(std::move(x));
    }
  }
  // Ascend only from the most promising starts.
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(starts.size());
  for (std::size_t s = 0; s < starts.size(); ++s) ranked.push_back({image_l1(t, starts[s]), s});
  std::stable_sort(ranked.begin(), ranked.end(), [](auto& a, auto& b) { return a.first > b.first; });
  const std::size_t keep = std::min<std::size_t>(ranked.size(), 96);

  ComplexSearch out;
  for (std::size_t r = 0; r < keep; ++r) {
    auto local = phase_ascent(t, starts[ranked[r].second], grid);
    out.best = std::max(out.best, local.first);
    out.maxima.push_back(std::move(local));
  }
  return out;
}

}  // namespace

OperatorMatrix::OperatorMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries, Field field)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), field_(field) {
  check_dimension(rows_, cols_);
  if (entries_.size() != rows_ * cols_) throw Error(ErrorKind::ShapeMismatch, "entry count does not match m x n");
  for (const auto& z : entries_) {
    if (!is_finite(z)) throw Error(ErrorKind::NonFinite, "matrix entry is not finite");
    if (field_ == Field::Real && z.imag() != 0.0)
      throw Error(ErrorKind::ShapeMismatch, "real matrix with a nonzero imaginary part");
  }
}

OperatorMatrix OperatorMatrix::real(std::size_t rows, std::size_t cols, const std::vector<double>& entries) {
  return OperatorMatrix(rows, cols, std::vector<Scalar>(entries.begin(), entries.end()), Field::Real);
}

OperatorMatrix OperatorMatrix::zeros(std::size_t rows, std::size_t cols, Field field) {
  check_dimension(rows, cols);
  return OperatorMatrix(rows, cols, std::vector<Scalar>(rows * cols), field);
}

bool OperatorMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& z) { return z == Scalar{0.0, 0.0}; });
}

std::vector<Scalar> OperatorMatrix::apply(std::span<const Scalar> x) const {
  if (x.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "point length must equal n");
  std::vector<Scalar> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar s{0.0, 0.0};
    for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

FiniteVector OperatorMatrix::image(std::span<const Scalar> x) const {
  auto out = apply(x);
  const bool real = field_ == Field::Real &&
                    std::all_of(x.begin(), x.end(), [](const Scalar& z) { return z.imag() == 0.0; });
  if (real)
    for (auto& z : out) z = Scalar{z.real(), 0.0};
  return FiniteVector(std::move(out), NormKind::L1, real ? Field::Real : Field::Complex);
}

OperatorMatrix OperatorMatrix::plus(const OperatorMatrix& other, Scalar alpha) const {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw Error(ErrorKind::ShapeMismatch, "operator shapes differ");
  const Field field = (field_ == Field::Complex || other.field_ == Field::Complex || alpha.imag() != 0.0)
                          ? Field::Complex
                          : Field::Real;
  std::vector<Scalar> out(entries_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += alpha * other.entries_[k];
  if (field == Field::Real)
    for (auto& z : out) z = Scalar{z.real(), 0.0};
  return OperatorMatrix(rows_, cols_, std::move(out), field);
}

OperatorMatrix OperatorMatrix::scaled(Scalar alpha) const {
  const Field field = alpha.imag() != 0.0 ? Field::Complex : field_;
  std::vector<Scalar> out(entries_);
  for (auto& z : out) z *= alpha;
  if (field == Field::Real)
    for (auto& z : out) z = Scalar{z.real(), 0.0};
  return OperatorMatrix(rows_, cols_, std::move(out), field);
}

OperatorMatrix OperatorMatrix::with_entry(std::size_t i, std::size_t j, Scalar value) const {
  std::vector<Scalar> out(entries_);
  out.at(i * cols_ + j) = value;
  return OperatorMatrix(rows_, cols_, std::move(out), value.imag() != 0.0 ? Field::Complex : field_);
}

NormEstimate op_norm_estimate(const OperatorMatrix& t, const OperatorOptions& options) {
  if (t.is_zero()) return {0.0, true};
  if (t.field() == Field::Real) {
    const std::size_t n = t.cols();
    std::vector<double> eps(n);
    double best = 0.0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n - 1)); ++code) {
      sign_vector(code, eps);
      best = std::max(best, image_l1_real(t, eps));
    }
    return {best, true};
  }
  if (t.rows() == 1) {
    // A single row is a functional on the polydisc: its norm is the l1 norm of the row.
    double sum = 0.0;
    for (const auto& z : t.entries()) sum += std::abs(z);
    return {sum, true};
  }
  return {complex_search(t, options).best, false};
}

double op_norm(const OperatorMatrix& t, const OperatorOptions& options) { return op_norm_estimate(t, options).value; }

std::vector<Point> NormingSet::members() const {
  if (approximate) return representatives;
  std::vector<Point> out;
  out.reserve(2 * representatives.size());
  for (const auto& p : representatives) {
    out.push_back(p);
    Point neg(p);
    for (auto& z : neg) z = -z;
    out.push_back(std::move(neg));
  }
  return out;
}

NormingSet norming_set(const OperatorMatrix& t, const OperatorOptions& options) {
  require_nonzero(t);
  NormingSet out;
  const std::size_t n = t.cols();
  if (t.field() == Field::Real) {
    std::vector<double> eps(n);
    std::vector<std::pair<double, std::uint64_t>> values;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n - 1)); ++code) {
      sign_vector(code, eps);
      const double v = image_l1_real(t, eps);
      out.norm = std::max(out.norm, v);
      values.push_back({v, code});
    }
    for (auto [v, code] : values) {
      if (v >= (1.0 - options.tol.active) * out.norm) {
        sign_vector(code, eps);
        out.representatives.emplace_back(eps.begin(), eps.end());
      }
    }
    return out;
  }
  auto search = complex_search(t, options);
  out.norm = search.best;
  out.approximate = true;
  for (auto& [v, x] : search.maxima) {
    if (v < (1.0 - options.tol.active) * out.norm) continue;
    Point rep = normalize_phase(x);
    const bool seen = std::any_of(out.representatives.begin(), out.representatives.end(), [&](const Point& q) {
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(q[j] - rep[j]) > 1e-6) return false;
      return true;
    });
    if (!seen) out.representatives.push_back(std::move(rep));
  }
  return out;
}

OperatorOrthogonality operator_bj_orthogonality(const OperatorMatrix& t, const OperatorMatrix& s,
                                                const OperatorOptions& options) {
  require_nonzero(t);
  if (t.rows() != s.rows() || t.cols() != s.cols()) throw Error(ErrorKind::ShapeMismatch, "operator shapes differ");
  OperatorOrthogonality out;
  out.norming = norming_set(t, options);
  out.approximate = out.norming.approximate;
  const Field field = (t.field() == Field::Real && s.field() == Field::Real) ? Field::Real : Field::Complex;
  for (std::size_t p = 0; p < out.norming.representatives.size(); ++p) {
    const auto& x = out.norming.representatives[p];
    auto tx = t.apply(x);
    auto sx = s.apply(x);
    FiniteVector ftx(std::move(tx), NormKind::L1, Field::Complex);
    FiniteVector fsx(std::move(sx), NormKind::L1, Field::Complex);
    for (auto atom : support_range(ftx, fsx, options.tol).atoms) {
      if (field == Field::Real) atom.center = Scalar{atom.center.real(), 0.0};
      out.atoms.push_back(atom);
      out.atom_point.push_back(p);
    }
  }
  out.membership = zero_in_convex_union(out.atoms, field, options.tol);
  out.orthogonal = out.membership.contains_zero;
  return out;
}

bool operator_bj_orthogonal(const OperatorMatrix& t, const OperatorMatrix& s, const OperatorOptions& options) {
  return operator_bj_orthogonality(t, s, options).orthogonal;
}

bool operator_is_smooth(const OperatorMatrix& t, const OperatorOptions& options) {
  const auto ns = norming_set(t, options);
  if (ns.representatives.size() != 1) return false;
  return is_smooth_vec(t.image(ns.representatives.front()), options.tol);
}

std::vector<Point> canonical_extreme_basis(std::size_t n) {
  if (n == 0 || n == 2) throw Error(ErrorKind::UnsupportedDimension, "canonical basis needs n = 1 or n >= 3");
  std::vector<Point> out(n, Point(n, Scalar{1.0, 0.0}));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = -1.0;
  return out;
}

std::size_t point_rank(std::span<const Point> points) {
  if (points.empty()) return 0;
  const std::size_t n = points.front().size();
  Eigen::MatrixXcd m(n, points.size());
  for (std::size_t c = 0; c < points.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = points[c][r];
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<std::size_t>(lu.rank());
}

namespace {

void check_basis(std::span<const Point> basis, std::size_t n) {
  if (basis.size() != n) throw Error(ErrorKind::SingularBasis, "basis must have n vectors");
  for (const auto& p : basis) {
    if (p.size() != n) throw Error(ErrorKind::SingularBasis, "basis vector has wrong length");
    for (const auto& z : p)
      if (std::abs(std::abs(z) - 1.0) > kUnimodularSlack)
        throw Error(ErrorKind::SingularBasis, "basis entries must be unimodular");
  }
  if (point_rank(basis) != n) throw Error(ErrorKind::SingularBasis, "basis is linearly dependent");
}

bool all_real(std::span<const Point> points) {
  for (const auto& p : points)
    for (const auto& z : p)
      if (z.imag() != 0.0) return false;
  return true;
}

}  // namespace

ProductVector gamma_embed(const OperatorMatrix& t, std::span<const Point> basis) {
  check_basis(basis, t.cols());
  const Field field = (t.field() == Field::Real && all_real(basis)) ? Field::Real : Field::Complex;
  std::vector<FiniteVector> parts;
  for (const auto& x : basis) {
    auto v = t.apply(x);
    if (field == Field::Real)
      for (auto& z : v) z = Scalar{z.real(), 0.0};
    parts.emplace_back(std::move(v), NormKind::L1, field);
  }
  return ProductVector(std::move(parts));
}

OperatorMatrix gamma_invert(const ProductVector& y, std::span<const Point> basis) {
  const std::size_t n = y.blocks();
  const std::size_t m = y.block_size();
  check_basis(basis, n);
  const Field field = (y.field() == Field::Real && all_real(basis)) ? Field::Real : Field::Complex;
  // T X = Y with X = [x_1 ... x_n] and Y = [y_1 ... y_n]; solve X^T T^T = Y^T.
  Eigen::MatrixXcd xt(n, n), yt(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < n; ++r) xt(i, r) = basis[i][r];
    for (std::size_t r = 0; r < m; ++r) yt(i, r) = y[i][r];
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(xt);
  if (!lu.isInvertible()) throw Error(ErrorKind::SingularBasis, "basis is not invertible");
  const Eigen::MatrixXcd tt = lu.solve(yt);
  std::vector<Scalar> entries(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar z = tt(j, i);
      if (field == Field::Real) z = Scalar{z.real(), 0.0};
      entries[i * n + j] = z;
    }
  return OperatorMatrix(m, n, std::move(entries), field);
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  SignedPermutation p;
  for (std::size_t i = 0; i < n; ++i) {
    p.source.push_back(i);
    p.phase.push_back(1.0);
  }
  return p;
}

Point SignedPermutation::apply(std::span<const Scalar> v) const {
  Point out(size());
  for (std::size_t r = 0; r < size(); ++r) out[r] = phase[r] * v[source[r]];
  return out;
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation q;
  q.source.resize(size());
  q.phase.resize(size());
  for (std::size_t r = 0; r < size(); ++r) {
    q.source[source[r]] = r;
    q.phase[source[r]] = std::conj(phase[r]);
  }
  return q;
}

OperatorMatrix compose(const OperatorMatrix& t, const SignedPermutation& p) {
  if (p.size() != t.cols()) throw Error(ErrorKind::ShapeMismatch, "permutation size must equal n");
  bool real = t.field() == Field::Real;
  for (const auto& z : p.phase) real = real && z.imag() == 0.0;
  std::vector<Scalar> entries(t.rows() * t.cols());
  // (T P)_{i, source[r]} = T_{i, r} phase[r]
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t r = 0; r < t.cols(); ++r) entries[i * t.cols() + p.source[r]] = t.at(i, r) * p.phase[r];
  if (real)
    for (auto& z : entries) z = Scalar{z.real(), 0.0};
  return OperatorMatrix(t.rows(), t.cols(), std::move(entries), real ? Field::Real : Field::Complex);
}

OperatorMatrix compose(const SignedPermutation& p, const OperatorMatrix& t) {
  if (p.size() != t.rows()) throw Error(ErrorKind::ShapeMismatch, "permutation size must equal m");
  bool real = t.field() == Field::Real;
  for (const auto& z : p.phase) real = real && z.imag() == 0.0;
  std::vector<Scalar> entries(t.rows() * t.cols());
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t j = 0; j < t.cols(); ++j) entries[r * t.cols() + j] = p.phase[r] * t.at(p.source[r], j);
  if (real)
    for (auto& z : entries) z = Scalar{z.real(), 0.0};
  return OperatorMatrix(t.rows(), t.cols(), std::move(entries), real ? Field::Real : Field::Complex);
}

std::optional<SignedPermutation> signed_permutation_align(std::span<const Point> points, std::size_t n) {
  if (n > kMaxAlignDimension) throw Error(ErrorKind::DimensionTooLarge, "alignment search is limited to n <= 8");
  if (points.size() > n) throw Error(ErrorKind::PreconditionViolated, "more points than coordinates");
  for (const auto& p : points) {
    if (p.size() != n) throw Error(ErrorKind::ShapeMismatch, "point length must equal n");
    for (const auto& z : p)
      if (std::abs(std::abs(z) - 1.0) > kUnimodularSlack)
        throw Error(ErrorKind::PreconditionViolated, "points must have unimodular entries");
  }
  if (point_rank(points) != points.size())
    throw Error(ErrorKind::PreconditionViolated, "points must be linearly independent");
  if (points.empty()) return SignedPermutation::identity(n);

  const std::size_t k = points.size();
  auto canonical = [](std::size_t i, std::size_t r) { return r == i ? -1.0 : 1.0; };
  SignedPermutation p;
  p.source.assign(n, 0);
  p.phase.assign(n, 1.0);
  std::vector<bool> used(n, false);

  // Depth-first over target rows; every (row, source) pair fixes the phase from
  // the first point and must be consistent with the others.
  auto search = [&](auto&& self, std::size_t r) -> bool {
    if (r == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      const Scalar phase = canonical(0, r) / points[0][c];
      bool ok = true;
      for (std::size_t i = 1; i < k && ok; ++i)
        ok = std::abs(phase * points[i][c] - canonical(i, r)) <= kUnimodularSlack;
      if (!ok) continue;
      used[c] = true;
      p.source[r] = c;
      p.phase[r] = phase;
      if (self(self, r + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return p;
}

}  // namespace bjg
