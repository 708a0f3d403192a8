#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace cylab {

// Read-once view of a JSON object. Every key must be consumed before
// finish(), otherwise the first unread key is reported.
class ConfigNode {
 public:
  ConfigNode(const nlohmann::json& value, std::string path);

  bool has(const std::string& key) const;
  double number(const std::string& key, std::optional<double> fallback = std::nullopt);
  // A number or the string "inf".
  double exponent(const std::string& key, std::optional<double> fallback = std::nullopt);
  int integer(const std::string& key, std::optional<int> fallback = std::nullopt);
  bool boolean(const std::string& key, std::optional<bool> fallback = std::nullopt);
  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt);
  std::vector<double> numbers(const std::string& key, std::optional<std::vector<double>> fallback = std::nullopt);
  // Missing key gives an empty object.
  ConfigNode child(const std::string& key);
  void finish() const;

 private:
  const nlohmann::json* lookup(const std::string& key, bool required);
  std::string where(const std::string& key) const;

  nlohmann::json value_;
  std::string path_;
  std::set<std::string> used_;
};

// Parses a version-1 document (an empty path gives the empty document).
nlohmann::json load_config(const std::string& path);

}  // namespace cylab
