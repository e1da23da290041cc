#include "copmin/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace copmin {

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what
                     : what),
      line(line),
      column(column) {}

namespace {

struct Token {
  std::string_view text;
  int column;
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    if (i > start) {
      tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
  }
  return tokens;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

Rational parse_entry(const Token& token, int line) {
  try {
    return parse_rational(token.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line, token.column);
  }
}

void check_symmetric(const RationalMatrix& q) {
  for (Index i = 0; i < q.rows(); ++i) {
    for (Index j = i + 1; j < q.cols(); ++j) {
      if (q(i, j) != q(j, i)) {
        throw ParseError("matrix is not symmetric: entries (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")/(" + std::to_string(j + 1) + "," +
                             std::to_string(i + 1) + ") differ",
                         0, 0);
      }
    }
  }
}

}  // namespace

RationalMatrix parse_matrix_text(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t li = 0;
  auto next_nonblank = [&]() -> std::optional<std::size_t> {
    while (li < lines.size() && split_tokens(lines[li]).empty()) {
      ++li;
    }
    if (li == lines.size()) {
      return std::nullopt;
    }
    return li++;
  };

  const auto header = next_nonblank();
  if (!header) {
    throw ParseError("empty input", 1, 1);
  }
  const auto head_tokens = split_tokens(lines[*header]);
  const int header_line = static_cast<int>(*header) + 1;
  if (head_tokens.size() != 1) {
    throw ParseError("expected a single dimension on the first line", header_line,
                     head_tokens.size() > 1 ? head_tokens[1].column : 1);
  }
  long long n = 0;
  try {
    std::size_t used = 0;
    n = std::stoll(std::string(head_tokens[0].text), &used);
    if (used != head_tokens[0].text.size()) {
      throw std::invalid_argument("trailing characters");
    }
  } catch (const std::exception&) {
    throw ParseError("invalid dimension '" + std::string(head_tokens[0].text) + "'", header_line,
                     head_tokens[0].column);
  }
  if (n < 1) {
    throw ParseError("dimension must be positive", header_line, head_tokens[0].column);
  }

  RationalMatrix q(n, n);
  for (long long r = 0; r < n; ++r) {
    if (li >= lines.size()) {
      throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(r),
                       static_cast<int>(lines.size()), 1);
    }
    const int line_no = static_cast<int>(li) + 1;
    const auto tokens = split_tokens(lines[li++]);
    if (static_cast<long long>(tokens.size()) != n) {
      const int col = tokens.size() > static_cast<std::size_t>(n)
                          ? tokens[static_cast<std::size_t>(n)].column
                          : static_cast<int>(lines[li - 1].size()) + 1;
      throw ParseError("expected " + std::to_string(n) + " entries, found " +
                           std::to_string(tokens.size()),
                       line_no, col);
    }
    for (long long c = 0; c < n; ++c) {
      q(r, c) = parse_entry(tokens[static_cast<std::size_t>(c)], line_no);
    }
  }
  for (; li < lines.size(); ++li) {
    const auto tokens = split_tokens(lines[li]);
    if (!tokens.empty()) {
      throw ParseError("unexpected trailing content", static_cast<int>(li) + 1,
                       tokens[0].column);
    }
  }
  check_symmetric(q);
  return q;
}

RationalMatrix parse_matrix_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0);
  }
  if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array()) {
    throw ParseError("JSON input needs a \"matrix\" array of arrays", 0, 0);
  }
  const auto& rows = doc["matrix"];
  const auto n = static_cast<Index>(rows.size());
  if (n < 1) {
    throw ParseError("matrix must be nonempty", 0, 0);
  }
  RationalMatrix q(n, n);
  for (Index r = 0; r < n; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw ParseError("row " + std::to_string(r + 1) + " must hold " + std::to_string(n) +
                           " entries",
                       0, 0);
    }
    for (Index c = 0; c < n; ++c) {
      const auto& cell = row[static_cast<std::size_t>(c)];
      try {
        if (cell.is_string()) {
          q(r, c) = parse_rational(cell.get<std::string>());
        } else if (cell.is_number_integer()) {
          q(r, c) = Rational(cell.get<long long>());
        } else {
          throw std::invalid_argument("entry must be a string or an integer");
        }
      } catch (const std::invalid_argument& e) {
        throw ParseError("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                             "): " + e.what(),
                         0, 0);
      }
    }
  }
  check_symmetric(q);
  return q;
}

RationalMatrix parse_matrix(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return parse_matrix_json(text);
  }
  return parse_matrix_text(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RationalMatrix parse_matrix_file(const std::string& path) {
  return parse_matrix(read_file(path));
}

std::string format_matrix(const RationalMatrix& q) {
  std::string out = std::to_string(q.rows()) + "\n";
  for (Index i = 0; i < q.rows(); ++i) {
    for (Index j = 0; j < q.cols(); ++j) {
      if (j > 0) {
        out += ' ';
      }
      out += to_string(q(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_vector(const IntVector& z) {
  std::string out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i > 0) {
      out += ' ';
    }
    out += std::to_string(z[i]);
  }
  return out;
}

}  // namespace copmin
