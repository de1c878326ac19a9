#include "pentagram/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace pentagram {

std::pair<int, int> read_dimensions(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InputError, "expected a JSON object");
  for (const char* key : {"n", "N"})
    if (!j.contains(key) || !j.at(key).is_number_integer())
      throw Error(ErrorCode::InputError, std::string("missing or non-integer \"") + key + "\"");
  const long n = j.at("n").get<long>();
  const long N = j.at("N").get<long>();
  if (n < 1 || n > 64 || N < 1 || N > 100000)
    throw Error(ErrorCode::InputError, "dimensions out of range: n=" + std::to_string(n) + " N=" + std::to_string(N));
  return {static_cast<int>(n), static_cast<int>(N)};
}

json to_json(const ConservationReport& report) {
  json out{{"check", report.check},         {"n", report.n},       {"N", report.N},
           {"samples", report.samples},     {"max_drift", report.max_drift}, {"pass", report.pass},
           {"steps_completed", report.steps_completed}};
  if (report.aborted_at) {
    out["aborted_at"] = *report.aborted_at;
    out["abort_reason"] = report.abort_reason;
  }
  return out;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InputError, std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InputError, "cannot write " + path);
  out << text;
}

}  // namespace pentagram
