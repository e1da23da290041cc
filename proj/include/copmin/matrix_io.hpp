#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "copmin/matrix.hpp"

namespace copmin {

/// Malformed matrix input. `line` and `column` are 1-based; zero when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line;
  int column;
};

/// Text format: first line `n`, then n lines of n whitespace-separated entries,
/// each an integer or `p/q`. Symmetry is enforced.
RationalMatrix parse_matrix_text(std::string_view text);

/// JSON format: {"matrix": [["3", "-1", ...], ...]}. Integer JSON numbers are
/// accepted alongside strings.
RationalMatrix parse_matrix_json(std::string_view text);

/// Dispatches on the first non-blank character ('{' selects JSON).
RationalMatrix parse_matrix(std::string_view text);

RationalMatrix parse_matrix_file(const std::string& path);

/// Inverse of parse_matrix_text: dimension line, then rows joined by single spaces.
std::string format_matrix(const RationalMatrix& q);

std::string format_vector(const IntVector& z);

std::string read_file(const std::string& path);

}  // namespace copmin
