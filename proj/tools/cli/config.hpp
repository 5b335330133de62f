#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ratelab::cli {

// Sectioned key-value run configuration. Lines are `key = value`, section
// headers are `[name]`, and `#` starts a comment. Keys appearing before any
// header land in the `run` section.
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  [[nodiscard]] bool has(const std::string& section, const std::string& key) const;

  [[nodiscard]] std::string get_string(const std::string& section, const std::string& key,
                                       const std::string& fallback) const;
  [[nodiscard]] std::string require_string(const std::string& section,
                                           const std::string& key) const;
  [[nodiscard]] double get_double(const std::string& section, const std::string& key,
                                  double fallback) const;
  [[nodiscard]] int get_int(const std::string& section, const std::string& key,
                            int fallback) const;
  [[nodiscard]] std::uint64_t get_u64(const std::string& section, const std::string& key,
                                      std::uint64_t fallback) const;
  [[nodiscard]] bool get_bool(const std::string& section, const std::string& key,
                              bool fallback) const;
  [[nodiscard]] std::vector<int> get_int_list(const std::string& section, const std::string& key,
                                              const std::vector<int>& fallback) const;

  [[nodiscard]] const std::map<std::string, std::map<std::string, std::string>>& sections()
      const {
    return sections_;
  }

 private:
  [[nodiscard]] const std::string* find(const std::string& section,
                                        const std::string& key) const;

  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace ratelab::cli
