#ifndef EERD_TOML_HPP
#define EERD_TOML_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace eerd::toml {

// Minimal TOML subset: comments, [section] headers, and key = value
// pairs where a value is a quoted string, a number, a boolean, or a
// single-line array of numbers. Enough for flat configuration files;
// errors carry the offending line number.

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct Value {
  std::variant<std::string, double, bool, std::vector<double>> data;
  int line = 0;

  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const { return std::holds_alternative<std::vector<double>>(data); }

  const std::string& as_string() const { return std::get<std::string>(data); }
  double as_number() const { return std::get<double>(data); }
  bool as_bool() const { return std::get<bool>(data); }
  const std::vector<double>& as_array() const {
    return std::get<std::vector<double>>(data);
  }
};

using Table = std::map<std::string, Value>;

struct Document {
  std::map<std::string, Table> sections;
  bool has(const std::string& section) const { return sections.count(section) > 0; }
};

Document parse_string(const std::string& text);
Document parse_file(const std::string& path);

}  // namespace eerd::toml

#endif
