#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace copmin {

/// Exit codes shared by all subcommands.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int not_strictly_copositive = 2;
inline constexpr int not_applicable = 3;
inline constexpr int node_limit = 4;
inline constexpr int usage = 64;
inline constexpr int data_error = 65;
inline constexpr int no_input = 66;
}  // namespace exit_code

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace copmin
