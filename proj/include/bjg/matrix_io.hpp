#pragma once

// Matrix files:
//   m n field            (field is "real" or "complex")
//   m rows of n scalars  (complex scalars as a+bi, bi, a+i, no inner spaces)
// Blank lines and lines starting with '#' are ignored.

#include <filesystem>
#include <string>
#include <string_view>

#include "bjg/operator_space.hpp"

namespace bjg {

class MatrixParseError : public Error {
 public:
  MatrixParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

// Throws MatrixParseError (1-based line and column) or DimensionError.
OperatorMatrix parse_matrix(std::string_view text);
OperatorMatrix read_matrix_file(const std::filesystem::path& path);

// 17 significant digits, so parse_matrix(emit_matrix(T)) == T.
std::string format_scalar(Scalar z, Field field);
std::string emit_matrix(const OperatorMatrix& t);
void write_matrix_file(const std::filesystem::path& path, const OperatorMatrix& t);

}  // namespace bjg
