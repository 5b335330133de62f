#include "cli/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ratelab/errors.hpp"

namespace ratelab::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])) != 0) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])) != 0) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void bad_value(const std::string& section, const std::string& key,
                            const std::string& value, const char* want) {
  throw ConfigError("config value " + section + "." + key + " = '" + value +
                    "' is not a valid " + want);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string section = "run";
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                        line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const std::string* Config::find(const std::string& section, const std::string& key) const {
  auto sit = sections_.find(section);
  if (sit == sections_.end()) return nullptr;
  auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return nullptr;
  return &kit->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  const std::string* v = find(section, key);
  return v != nullptr ? *v : fallback;
}

std::string Config::require_string(const std::string& section, const std::string& key) const {
  const std::string* v = find(section, key);
  if (v == nullptr) throw ConfigError("config key " + section + "." + key + " is required");
  return *v;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  const std::string* v = find(section, key);
  if (v == nullptr) return fallback;
  try {
    std::size_t used = 0;
    double out = std::stod(*v, &used);
    if (used != v->size()) bad_value(section, key, *v, "number");
    return out;
  } catch (const std::logic_error&) {
    bad_value(section, key, *v, "number");
  }
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
  const std::string* v = find(section, key);
  if (v == nullptr) return fallback;
  int out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) bad_value(section, key, *v, "integer");
  return out;
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key,
                              std::uint64_t fallback) const {
  const std::string* v = find(section, key);
  if (v == nullptr) return fallback;
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    bad_value(section, key, *v, "unsigned integer");
  }
  return out;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  const std::string* v = find(section, key);
  if (v == nullptr) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  bad_value(section, key, *v, "boolean");
}

std::vector<int> Config::get_int_list(const std::string& section, const std::string& key,
                                      const std::vector<int>& fallback) const {
  const std::string* v = find(section, key);
  if (v == nullptr) return fallback;
  std::vector<int> out;
  std::string item;
  std::istringstream in(*v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) bad_value(section, key, *v, "integer list");
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      bad_value(section, key, *v, "integer list");
    }
    out.push_back(value);
  }
  if (out.empty()) bad_value(section, key, *v, "integer list");
  return out;
}

}  // namespace ratelab::cli
