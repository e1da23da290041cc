#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace copmin {

struct RunReport {
  std::string command;
  /// FNV-1a 64-bit digest of the input, as 16 hex digits.
  std::string input_digest;
  std::string status;
  std::string strategy;
  std::string minimum;
  std::size_t vector_count = 0;
  double millis = 0.0;

  static std::string csv_header();
  std::string to_csv() const;
  std::string to_json() const;
};

std::string fnv1a_hex(std::string_view bytes);

}  // namespace copmin
