#include "swiss/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace swiss {

std::string format_double17(double v) {
  if (!std::isfinite(v)) {
    throw IoError("refusing to serialize a non-finite number");
  }
  // Zeros keep an explicit decimal point: "-0" would reparse as integer 0.
  if (v == 0.0) return std::signbit(v) ? "-0.0" : "0.0";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

void dump_value(std::string& out, const nlohmann::ordered_json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * static_cast<std::size_t>(depth + 1),
                           ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::null:
      out += "null";
      return;
    case nlohmann::ordered_json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case nlohmann::ordered_json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case nlohmann::ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case nlohmann::ordered_json::value_t::number_float:
      out += format_double17(j.get<double>());
      return;
    case nlohmann::ordered_json::value_t::string:
      append_escaped(out, j.get<std::string>());
      return;
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& item : j) {
        if (!first) out.push_back(',');
        first = false;
        out.push_back('\n');
        out += pad_in;
        dump_value(out, item, indent, depth + 1);
      }
      out.push_back('\n');
      out += pad;
      out.push_back(']');
      return;
    }
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        out.push_back('\n');
        out += pad_in;
        append_escaped(out, it.key());
        out += ": ";
        dump_value(out, it.value(), indent, depth + 1);
      }
      out.push_back('\n');
      out += pad;
      out.push_back('}');
      return;
    }
    default:
      throw IoError("unsupported JSON value type");
  }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump_value(out, j, indent, 0);
  out.push_back('\n');
  return out;
}

nlohmann::ordered_json parse_json_text(const std::string& text) {
  try {
    return nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("JSON parse error: ") + e.what());
  }
}

nlohmann::ordered_json parse_json_file(const std::string& path) {
  return parse_json_text(read_text_file(path));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

}  // namespace swiss
