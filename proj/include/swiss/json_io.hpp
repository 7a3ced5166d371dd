#pragma once

#include <string>

#include "json.hpp"

namespace swiss {

// Thrown for unreadable files and malformed documents (CLI exit code 3).
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Formats v with 17 significant digits, which round-trips IEEE binary64.
std::string format_double17(double v);

// Serializer used for every document this project writes. Identical to
// nlohmann dump(2) except that floating-point numbers are emitted with
// 17 significant digits. Deterministic: dump(parse(dump(x))) == dump(x).
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

nlohmann::ordered_json parse_json_text(const std::string& text);
nlohmann::ordered_json parse_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace swiss
