#pragma once

// Flat key=value run configuration with one [section] per CLI subcommand.
// Lines starting with '#' or ';' are comments.  Overrides arrive as dotted
// keys ("model.lambda=20").  Every getter names the offending section.key in
// its error message.

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gamow/errors.hpp"

namespace gamow {

class Config {
 public:
  static Config from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string trimmed = trim(line);
      if (trimmed.empty() || trimmed[0] == '#' || trimmed[0] == ';') continue;
      if (trimmed.front() == '[') {
        if (trimmed.back() != ']')
          throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section");
        section = trim(trimmed.substr(1, trimmed.size() - 2));
        if (section.empty())
          throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
        continue;
      }
      const auto eq = trimmed.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
      const std::string key = trim(trimmed.substr(0, eq));
      if (key.empty())
        throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
      if (section.empty())
        throw ConfigError("config line " + std::to_string(line_no) + ": key '" + key +
                          "' appears before any [section]");
      cfg.sections_[section][key] = trim(trimmed.substr(eq + 1));
    }
    return cfg;
  }

  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
  }

  /// Apply a "section.key=value" override.
  void set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override must look like section.key=value, got '" + assignment + "'");
    const std::string dotted = trim(assignment.substr(0, eq));
    const auto dot = dotted.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == dotted.size())
      throw ConfigError("override key must be section.key, got '" + dotted + "'");
    sections_[dotted.substr(0, dot)][dotted.substr(dot + 1)] = trim(assignment.substr(eq + 1));
  }

  bool has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
  }

  std::string get_string(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end() || !s->second.count(key))
      throw ConfigError("missing config value " + section + "." + key);
    return s->second.at(key);
  }

  std::string get_string_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
  }

  double get_double(const std::string& section, const std::string& key) const {
    const std::string text = get_string(section, key);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || end == text.c_str() || !std::isfinite(v))
      throw ConfigError(section + "." + key + ": expected a number, got '" + text + "'");
    return v;
  }

  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
  }

  double get_positive(const std::string& section, const std::string& key) const {
    const double v = get_double(section, key);
    if (!(v > 0))
      throw ConfigError(section + "." + key + " must be > 0, got " +
                        get_string(section, key));
    return v;
  }

  int get_int(const std::string& section, const std::string& key) const {
    const double v = get_double(section, key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw ConfigError(section + "." + key + ": expected an integer, got '" +
                        get_string(section, key) + "'");
    return i;
  }

  int get_int_or(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
  }

  /// Whitespace-separated tokens.
  std::vector<std::string> get_tokens(const std::string& section, const std::string& key) const {
    std::istringstream ss(get_string(section, key));
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
  }

 private:
  static std::string trim(const std::string& s) {
    const auto start = s.find_first_not_of(" \t\r");
    const auto stop = s.find_last_not_of(" \t\r");
    if (start == std::string::npos) return "";
    return s.substr(start, stop - start + 1);
  }

  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace gamow
