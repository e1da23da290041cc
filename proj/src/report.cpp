#include "copmin/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace copmin {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunReport::csv_header() {
  return "command,input_digest,status,strategy,minimum,vector_count,millis";
}

std::string RunReport::to_csv() const {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", millis);
  return command + "," + input_digest + "," + status + "," + strategy + "," + minimum + "," +
         std::to_string(vector_count) + "," + ms;
}

std::string RunReport::to_json() const {
  nlohmann::json j{{"command", command},   {"input_digest", input_digest},
                   {"status", status},     {"strategy", strategy},
                   {"minimum", minimum},   {"vector_count", vector_count},
                   {"millis", millis}};
  return j.dump();
}

}  // namespace copmin
