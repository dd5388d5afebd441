#include "eerd/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace eerd::toml {

namespace {

std::string strip(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Removes a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      return false;
  return true;
}

double parse_number(const std::string& text, int line) {
  std::string t = text;
  // from_chars rejects leading '+'.
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  double out = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "invalid number '" + text + "'");
  return out;
}

Value parse_value(const std::string& raw, int line) {
  Value v;
  v.line = line;
  const std::string text = strip(raw);
  if (text.empty()) throw ParseError(line, "missing value");
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"')
      throw ParseError(line, "unterminated string");
    std::string out;
    for (size_t i = 1; i + 1 < text.size(); ++i) {
      if (text[i] == '\\' && i + 2 < text.size()) {
        ++i;
        out.push_back(text[i]);
      } else {
        out.push_back(text[i]);
      }
    }
    v.data = out;
    return v;
  }
  if (text == "true" || text == "false") {
    v.data = (text == "true");
    return v;
  }
  if (text.front() == '[') {
    if (text.back() != ']') throw ParseError(line, "unterminated array");
    std::vector<double> values;
    std::string body = text.substr(1, text.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = strip(item);
      if (item.empty()) continue;
      values.push_back(parse_number(item, line));
    }
    v.data = values;
    return v;
  }
  v.data = parse_number(text, line);
  return v;
}

}  // namespace

Document parse_string(const std::string& text) {
  Document doc;
  std::string current_section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, "unterminated section header");
      current_section = strip(s.substr(1, s.size() - 2));
      if (!valid_key(current_section))
        throw ParseError(line, "invalid section name '" + current_section + "'");
      doc.sections[current_section];  // empty sections are allowed
      continue;
    }
    const size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected 'key = value', got '" + s + "'");
    const std::string key = strip(s.substr(0, eq));
    if (!valid_key(key)) throw ParseError(line, "invalid key '" + key + "'");
    if (current_section.empty())
      throw ParseError(line, "key '" + key + "' outside of any section");
    auto& table = doc.sections[current_section];
    if (table.count(key)) throw ParseError(line, "duplicate key '" + key + "'");
    table.emplace(key, parse_value(s.substr(eq + 1), line));
  }
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str());
}

}  // namespace eerd::toml
