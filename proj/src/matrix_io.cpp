#include "bjg/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace bjg {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    if (k == line.size()) break;
    const std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
    out.push_back({line.substr(start, k - start), start + 1});
  }
  return out;
}

double parse_real(std::string_view text, std::size_t line, std::size_t column) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
    ++column;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw MatrixParseError(line, column, "malformed number '" + std::string(text) + "'");
  if (!std::isfinite(value)) throw MatrixParseError(line, column, "non-finite value");
  return negative ? -value : value;
}

Scalar parse_scalar(const Token& token, Field field, std::size_t line) {
  std::string_view text = token.text;
  if (field == Field::Real || text.back() != 'i') return {parse_real(text, line, token.column), 0.0};
  text.remove_suffix(1);
  // The imaginary part starts at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = 1; k < text.size(); ++k) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') split = k;
  }
  // A bare "i", "+i" or "-i" coefficient means 1 or -1.
  auto imaginary = [&](std::string_view part, std::size_t column) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part, line, column);
  };
  if (split == std::string_view::npos) return {0.0, imaginary(text, token.column)};
  return {parse_real(text.substr(0, split), line, token.column), imaginary(text.substr(split), token.column + split)};
}

std::size_t parse_dimension(const Token& token, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.text.data(), token.text.data() + token.text.size(), value);
  if (ec != std::errc() || ptr != token.text.data() + token.text.size())
    throw MatrixParseError(line, token.column, "expected a positive integer, got '" + std::string(token.text) + "'");
  if (value < 1 || value > kMaxDimension)
    throw Error(ErrorKind::DimensionError, "dimension " + std::to_string(value) + " outside 1..16");
  return value;
}

}  // namespace

OperatorMatrix parse_matrix(std::string_view text) {
  std::size_t rows = 0, cols = 0, row = 0;
  Field field = Field::Real;
  bool have_header = false;
  std::vector<Scalar> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_line(line);
    if (tokens.empty() || tokens.front().text.front() == '#') continue;

    if (!have_header) {
      if (tokens.size() != 3) throw MatrixParseError(line_no, 1, "header must be 'm n field'");
      rows = parse_dimension(tokens[0], line_no);
      cols = parse_dimension(tokens[1], line_no);
      if (tokens[2].text == "real") {
        field = Field::Real;
      } else if (tokens[2].text == "complex") {
        field = Field::Complex;
      } else {
        throw MatrixParseError(line_no, tokens[2].column, "field must be 'real' or 'complex'");
      }
      have_header = true;
      continue;
    }
    if (row == rows) throw MatrixParseError(line_no, tokens.front().column, "more rows than the header declares");
    if (tokens.size() != cols) {
      const std::size_t column = tokens.size() > cols ? tokens[cols].column : line.size() + 1;
      throw MatrixParseError(line_no, column,
                             "expected " + std::to_string(cols) + " entries, found " + std::to_string(tokens.size()));
    }
    for (const auto& token : tokens) entries.push_back(parse_scalar(token, field, line_no));
    ++row;
  }
  if (!have_header) throw MatrixParseError(line_no, 1, "missing header");
  if (row != rows)
    throw MatrixParseError(line_no, 1,
                           "expected " + std::to_string(rows) + " rows, found " + std::to_string(row));
  return OperatorMatrix(rows, cols, std::move(entries), field);
}

OperatorMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix(buffer.str());
}

std::string format_scalar(Scalar z, Field field) {
  char buf[64];
  if (field == Field::Real) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

std::string emit_matrix(const OperatorMatrix& t) {
  std::string out = std::to_string(t.rows()) + " " + std::to_string(t.cols()) + " " +
                    std::string(to_string(t.field())) + "\n";
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_scalar(t.at(i, j), t.field());
    }
    out += '\n';
  }
  return out;
}

void write_matrix_file(const std::filesystem::path& path, const OperatorMatrix& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << emit_matrix(t);
}

}  // namespace bjg
