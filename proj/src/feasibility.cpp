#include "bjg/feasibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace bjg {

namespace {

double gap_of(std::span<const DiskAtom> atoms, std::span<const double> weights) {
  Scalar centre{0.0, 0.0};
  double radius = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    centre += weights[i] * atoms[i].center;
    radius += weights[i] * atoms[i].radius;
  }
  return std::abs(centre) - radius;
}

// Barycentric coordinates of the origin in the triangle (a, b, c), if inside.
std::optional<std::array<double, 3>> origin_in_triangle(Scalar a, Scalar b, Scalar c) {
  const Scalar u = a - c;
  const Scalar v = b - c;
  const double det = u.real() * v.imag() - u.imag() * v.real();
  const double scale = std::max({std::norm(u), std::norm(v), 1e-300});
  if (std::abs(det) <= 1e-14 * scale) return std::nullopt;
  // Solve l1 u + l2 v = -c.
  const double l1 = (-c.real() * v.imag() + c.imag() * v.real()) / det;
  const double l2 = (-u.real() * c.imag() + u.imag() * c.real()) / det;
  const double l3 = 1.0 - l1 - l2;
  constexpr double slack = -1e-15;
  if (l1 < slack || l2 < slack || l3 < slack) return std::nullopt;
  std::array<double, 3> w{std::max(l1, 0.0), std::max(l2, 0.0), std::max(l3, 0.0)};
  const double sum = w[0] + w[1] + w[2];
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace

std::pair<double, double> min_gap_on_segment(const DiskAtom& a, const DiskAtom& b) {
  const Scalar d = b.center - a.center;
  const double dr = b.radius - a.radius;
  auto phi = [&](double t) { return std::abs(a.center + t * d) - (a.radius + t * dr); };

  const double h = std::abs(d);
  double t = 0.0;
  if (h < 1e-300) {
    t = dr > 0.0 ? 1.0 : 0.0;
  } else if (dr >= h) {
    t = 1.0;
  } else if (dr <= -h) {
    t = 0.0;
  } else {
    // |a + t d| = sqrt(h^2 (t - t0)^2 + k^2); the stationary point balances the
    // slope of the distance against dr.
    const Scalar cross = std::conj(a.center) * d;
    const double t0 = -cross.real() / (h * h);
    const double k = std::abs(cross.imag()) / h;
    const double rho = dr / h;
    const double s = rho * k / (h * std::sqrt(1.0 - rho * rho));
    t = std::clamp(t0 + s, 0.0, 1.0);
  }
  double best_t = t;
  double best = phi(t);
  for (double end : {0.0, 1.0}) {
    const double v = phi(end);
    if (v < best) {
      best = v;
      best_t = end;
    }
  }
  return {best_t, best};
}

HullMembership zero_in_convex_union(std::span<const DiskAtom> atoms, Field field,
                                    const Tolerances& tol) {
  if (atoms.empty()) throw Error(ErrorKind::EmptyInput, "zero_in_convex_union needs at least one atom");

  double scale = 1.0;
  for (const auto& atom : atoms) scale = std::max(scale, std::abs(atom.center) + atom.radius);
  const double margin = tol.margin * scale;

  const std::size_t count = atoms.size();
  HullMembership out;
  out.gap = kInf;
  std::vector<double> best_weights(count, 0.0);

  auto consider = [&](double gap, auto&& fill) {
    if (gap < out.gap) {
      out.gap = gap;
      std::fill(best_weights.begin(), best_weights.end(), 0.0);
      fill(best_weights);
    }
  };

  for (std::size_t i = 0; i < count; ++i) {
    consider(std::abs(atoms[i].center) - atoms[i].radius, [&](auto& w) { w[i] = 1.0; });
  }

  if (field == Field::Real) {
    // Hull is [lo, hi]; the extreme atoms carry a witness pair.
    std::size_t lo_at = 0, hi_at = 0;
    for (std::size_t i = 1; i < count; ++i) {
      if (atoms[i].center.real() - atoms[i].radius < atoms[lo_at].center.real() - atoms[lo_at].radius)
        lo_at = i;
      if (atoms[i].center.real() + atoms[i].radius > atoms[hi_at].center.real() + atoms[hi_at].radius)
        hi_at = i;
    }
    const double lo = atoms[lo_at].center.real() - atoms[lo_at].radius;
    const double hi = atoms[hi_at].center.real() + atoms[hi_at].radius;
    if (lo_at != hi_at) {
      auto [t, gap] = min_gap_on_segment(atoms[lo_at], atoms[hi_at]);
      consider(gap, [&](auto& w) {
        w[lo_at] = 1.0 - t;
        w[hi_at] = t;
      });
    }
    out.contains_zero = lo <= margin && hi >= -margin;
    // The interval test is authoritative; the gap reports the exact distance.
    out.gap = std::max(lo, -hi);
  } else {
    for (std::size_t i = 0; i < count && out.gap > margin; ++i) {
      for (std::size_t j = i + 1; j < count && out.gap > margin; ++j) {
        auto [t, gap] = min_gap_on_segment(atoms[i], atoms[j]);
        consider(gap, [&](auto& w) {
          w[i] = 1.0 - t;
          w[j] = t;
        });
      }
    }
    // Inside the simplex the only interior stationary point of the gap is where
    // the centre combination vanishes, so triangles only need centre containment.
    for (std::size_t i = 0; i < count && out.gap > margin; ++i) {
      for (std::size_t j = i + 1; j < count && out.gap > margin; ++j) {
        for (std::size_t k = j + 1; k < count && out.gap > margin; ++k) {
          auto bary = origin_in_triangle(atoms[i].center, atoms[j].center, atoms[k].center);
          if (!bary) continue;
          std::vector<double> w(count, 0.0);
          w[i] = (*bary)[0];
          w[j] = (*bary)[1];
          w[k] = (*bary)[2];
          consider(gap_of(atoms, w), [&](auto& dst) { dst = w; });
        }
      }
    }
    out.contains_zero = out.gap <= margin;
  }

  if (out.contains_zero) out.combiner = ConvexCombiner{std::move(best_weights)};
  return out;
}

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

namespace {

// x_j = offset_j + sum over (column, coefficient) of the nonnegative standard-form variables.
struct VariableMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> terms;
};

struct StandardForm {
  std::size_t columns = 0;
  std::vector<VariableMap> map;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> objective;
  double objective_offset = 0.0;
};

StandardForm to_standard_form(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables();
  StandardForm sf;
  sf.map.resize(n);
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, bound)
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double up = lp.upper.empty() ? kInf : lp.upper[j];
    auto& m = sf.map[j];
    if (std::isfinite(lo)) {
      m.offset = lo;
      m.terms.push_back({sf.columns, 1.0});
      if (std::isfinite(up)) upper_rows.push_back({sf.columns, up - lo});
      ++sf.columns;
    } else if (std::isfinite(up)) {
      m.offset = up;
      m.terms.push_back({sf.columns++, -1.0});
    } else {
      m.terms.push_back({sf.columns++, 1.0});
      m.terms.push_back({sf.columns++, -1.0});
    }
  }
  auto expand = [&](const std::vector<double>& coeffs, double& constant) {
    std::vector<double> row(sf.columns, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (coeffs[j] == 0.0) continue;
      constant += coeffs[j] * sf.map[j].offset;
      for (auto [col, c] : sf.map[j].terms) row[col] += coeffs[j] * c;
    }
    return row;
  };
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    double constant = 0.0;
    sf.rows.push_back(expand(lp.rows[i], constant));
    sf.rhs.push_back(lp.rhs[i] - constant);
  }
  for (auto [col, bound] : upper_rows) {
    std::vector<double> row(sf.columns, 0.0);
    row[col] = 1.0;
    sf.rows.push_back(std::move(row));
    sf.rhs.push_back(bound);
  }
  sf.objective = expand(lp.objective, sf.objective_offset);
  return sf;
}

template <class T>
T make_number(double x) {
  return T(x);
}

template <class T>
double to_double(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

// max c x  s.t.  A x <= b, x >= 0, as a full tableau.
template <class T>
class DenseSimplex {
 public:
  DenseSimplex(const StandardForm& sf, T eps) : eps_(eps) {
    rows_ = sf.rows.size();
    structural_ = sf.columns;
    std::size_t artificials = 0;
    for (double b : sf.rhs) artificials += b < 0.0 ? 1 : 0;
    first_artificial_ = structural_ + rows_;
    cols_ = first_artificial_ + artificials;
    tab_.assign(rows_ + 1, std::vector<T>(cols_ + 1, T(0)));
    basis_.assign(rows_, 0);

    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool flip = sf.rhs[i] < 0.0;
      const T sign = flip ? T(-1) : T(1);
      for (std::size_t j = 0; j < structural_; ++j) tab_[i][j] = sign * make_number<T>(sf.rows[i][j]);
      tab_[i][structural_ + i] = sign;
      tab_[i][cols_] = sign * make_number<T>(sf.rhs[i]);
      if (flip) {
        tab_[i][next_art] = T(1);
        basis_[i] = next_art++;
      } else {
        basis_[i] = structural_ + i;
      }
    }
    objective_.assign(cols_, T(0));
    for (std::size_t j = 0; j < structural_; ++j) objective_[j] = make_number<T>(sf.objective[j]);
  }

  LpStatus solve() {
    if (first_artificial_ < cols_) {
      // Phase 1: maximise -sum(artificials).
      auto& z = tab_[rows_];
      std::fill(z.begin(), z.end(), T(0));
      for (std::size_t j = first_artificial_; j < cols_; ++j) z[j] = T(1);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] >= first_artificial_) {
          for (std::size_t j = 0; j <= cols_; ++j) z[j] -= tab_[i][j];
        }
      }
      if (run(cols_) != LpStatus::Optimal) return LpStatus::Infeasible;
      if (tab_[rows_][cols_] < -eps_) return LpStatus::Infeasible;
      drive_out_artificials();
    }
    auto& z = tab_[rows_];
    std::fill(z.begin(), z.end(), T(0));
    for (std::size_t j = 0; j < cols_; ++j) z[j] = -objective_[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const T c = basis_[i] < cols_ ? objective_[basis_[i]] : T(0);
      if (c != T(0)) {
        for (std::size_t j = 0; j <= cols_; ++j) z[j] += c * tab_[i][j];
      }
    }
    return run(first_artificial_);
  }

  T value() const { return tab_[rows_][cols_]; }

  std::vector<double> structural_values() const {
    std::vector<double> x(structural_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) x[basis_[i]] = to_double(tab_[i][cols_]);
    }
    return x;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  // Dantzig pricing; after kDegenerateStreak pivots without progress, Bland's
  // rule until the objective moves again, which rules out cycling.
  LpStatus run(std::size_t enterable) {
    constexpr std::size_t kDegenerateStreak = 50;
    std::size_t streak = 0;
    for (;;) {
      const bool bland = streak >= kDegenerateStreak;
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < enterable; ++j) {
        if (tab_[rows_][j] < -eps_ && (enter == cols_ || tab_[rows_][j] < tab_[rows_][enter])) {
          enter = j;
          if (bland) break;
        }
      }
      if (enter == cols_) return LpStatus::Optimal;
      // Negative right-hand sides are rounding drift and count as 0. Outside
      // Bland mode the Harris two-pass test picks, among rows within eps of the
      // minimum ratio, the largest pivot element.
      auto rhs_of = [&](std::size_t i) { return tab_[i][cols_] < T(0) ? T(0) : tab_[i][cols_]; };
      std::size_t leave = rows_;
      T best_ratio{};
      for (std::size_t i = 0; i < rows_; ++i) {
        if (tab_[i][enter] > eps_) {
          T ratio = bland ? rhs_of(i) / tab_[i][enter] : (rhs_of(i) + eps_) / tab_[i][enter];
          if (leave == rows_ || ratio < best_ratio ||
              (ratio == best_ratio && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave != rows_ && !bland) {
        const T bound = best_ratio;
        leave = rows_;
        for (std::size_t i = 0; i < rows_; ++i) {
          if (tab_[i][enter] > eps_ && rhs_of(i) / tab_[i][enter] <= bound &&
              (leave == rows_ || tab_[i][enter] > tab_[leave][enter])) {
            leave = i;
          }
        }
        best_ratio = rhs_of(leave) / tab_[leave][enter];
      }
      if (leave == rows_) return LpStatus::Unbounded;
      streak = best_ratio <= eps_ ? streak + 1 : 0;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (abs_of(tab_[i][j]) > eps_) {
          pivot(i, j);
          break;
        }
      }
      // A row with no admissible pivot is redundant; its artificial stays at 0
      // and is never allowed to re-enter.
    }
  }

  static T abs_of(const T& x) { return x < T(0) ? T(-x) : x; }

  void pivot(std::size_t r, std::size_t s) {
    ++pivots_;
    const T inv = T(1) / tab_[r][s];
    nonzero_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (tab_[r][j] == T(0)) continue;
      tab_[r][j] *= inv;
      nonzero_.push_back(j);
    }
    tab_[r][s] = T(1);
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const T factor = tab_[i][s];
      if (factor == T(0)) continue;
      for (std::size_t j : nonzero_) tab_[i][j] -= factor * tab_[r][j];
      tab_[i][s] = T(0);
    }
    basis_[r] = s;
  }

  T eps_;
  std::size_t rows_ = 0, structural_ = 0, first_artificial_ = 0, cols_ = 0;
  std::vector<std::vector<T>> tab_;
  std::vector<std::size_t> basis_;
  std::vector<T> objective_;
  std::vector<std::size_t> nonzero_;
  std::size_t pivots_ = 0;
};

template <class T>
LpResult solve_with(const LinearProgram& lp, T eps) {
  const StandardForm sf = to_standard_form(lp);
  DenseSimplex<T> simplex(sf, eps);
  LpResult out;
  out.status = simplex.solve();
  out.pivots = simplex.pivots();
  if (out.status != LpStatus::Optimal) return out;
  const auto xs = simplex.structural_values();
  out.argument.resize(lp.num_variables());
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    double v = sf.map[j].offset;
    for (auto [col, c] : sf.map[j].terms) v += c * xs[col];
    out.argument[j] = v;
  }
  out.value = to_double(simplex.value()) + sf.objective_offset;
  return out;
}

}  // namespace

LpResult lp_maximize(const LinearProgram& program, LpArithmetic arithmetic) {
  const std::size_t n = program.num_variables();
  if (program.rows.size() != program.rhs.size())
    throw Error(ErrorKind::ShapeMismatch, "row count and rhs count differ");
  for (const auto& row : program.rows) {
    if (row.size() != n) throw Error(ErrorKind::ShapeMismatch, "constraint row has wrong length");
    for (double v : row)
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "constraint coefficient");
  }
  if ((!program.lower.empty() && program.lower.size() != n) ||
      (!program.upper.empty() && program.upper.size() != n))
    throw Error(ErrorKind::ShapeMismatch, "bound vectors must match the variable count");
  for (double v : program.objective)
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "objective coefficient");
  for (double v : program.rhs)
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "right-hand side");
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = program.lower.empty() ? 0.0 : program.lower[j];
    const double up = program.upper.empty() ? kInf : program.upper[j];
    if (lo > up) return LpResult{LpStatus::Infeasible, 0.0, {}, 0};
  }

  if (arithmetic == LpArithmetic::Rational) {
    using boost::multiprecision::cpp_rational;
    return solve_with<cpp_rational>(program, cpp_rational(0));
  }
  return solve_with<double>(program, 1e-9);
}

}  // namespace bjg
