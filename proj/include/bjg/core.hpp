#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bjg {

using Scalar = std::complex<double>;

enum class Field { Real, Complex };

std::string_view to_string(Field field);

// Shared numerical thresholds.
//   active: |v_i| >= (1 - active) * max marks an index (or component) as norm-attaining,
//           and |v_i| <= active * ||v|| marks an l1 coordinate as zero.
//   margin: slack allowed on 0-membership in a convex hull of ranges.
struct Tolerances {
  double active = 1e-9;
  double margin = 1e-9;
};

enum class ErrorKind {
  ZeroVector,
  ZeroOperator,
  ShapeMismatch,
  NonFinite,
  PreconditionViolated,
  DegenerateComponent,
  UnsupportedDimension,
  SingularBasis,
  DimensionTooLarge,
  NotNormalized,
  WrongVerdict,
  WitnessNotFound,
  EmptyInput,
  ParseError,
  DimensionError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// z/|z| for z != 0. Callers never pass 0.
inline Scalar unit_phase(Scalar z) { return z / std::abs(z); }

inline bool is_finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// splitmix64 step; used to derive independent per-task seeds from one user seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace bjg
