#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cyl/errors.hpp"

namespace cylab {

using cyl::ConfigError;

ConfigNode::ConfigNode(const nlohmann::json& value, std::string path) : value_(value), path_(std::move(path)) {
  if (!value_.is_object()) throw ConfigError("config key '" + (path_.empty() ? "<root>" : path_) + "' must be an object");
}

std::string ConfigNode::where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

bool ConfigNode::has(const std::string& key) const { return value_.contains(key); }

const nlohmann::json* ConfigNode::lookup(const std::string& key, bool required) {
  used_.insert(key);
  const auto it = value_.find(key);
  if (it == value_.end()) {
    if (required) throw ConfigError("missing config key '" + where(key) + "'");
    return nullptr;
  }
  return &*it;
}

double ConfigNode::number(const std::string& key, std::optional<double> fallback) {
  const auto* v = lookup(key, !fallback);
  if (!v) return *fallback;
  if (!v->is_number()) throw ConfigError("config key '" + where(key) + "' must be a number");
  const double d = v->get<double>();
  if (!std::isfinite(d)) throw ConfigError("config key '" + where(key) + "' must be finite");
  return d;
}

double ConfigNode::exponent(const std::string& key, std::optional<double> fallback) {
  const auto* v = lookup(key, !fallback);
  if (!v) return *fallback;
  if (v->is_string() && v->get<std::string>() == "inf") return INFINITY;
  if (!v->is_number()) throw ConfigError("config key '" + where(key) + "' must be a number or \"inf\"");
  return v->get<double>();
}

int ConfigNode::integer(const std::string& key, std::optional<int> fallback) {
  const auto* v = lookup(key, !fallback);
  if (!v) return *fallback;
  if (!v->is_number_integer()) throw ConfigError("config key '" + where(key) + "' must be an integer");
  return v->get<int>();
}

bool ConfigNode::boolean(const std::string& key, std::optional<bool> fallback) {
  const auto* v = lookup(key, !fallback);
  if (!v) return *fallback;
  if (!v->is_boolean()) throw ConfigError("config key '" + where(key) + "' must be a boolean");
  return v->get<bool>();
}

std::string ConfigNode::string(const std::string& key, std::optional<std::string> fallback) {
  const auto* v = lookup(key, !fallback);
  if (!v) return *fallback;
  if (!v->is_string()) throw ConfigError("config key '" + where(key) + "' must be a string");
  return v->get<std::string>();
}

std::vector<double> ConfigNode::numbers(const std::string& key, std::optional<std::vector<double>> fallback) {
  const auto* v = lookup(key, !fallback);
  if (!v) return *fallback;
  if (!v->is_array()) throw ConfigError("config key '" + where(key) + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : *v) {
    if (!e.is_number()) throw ConfigError("config key '" + where(key) + "' must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

ConfigNode ConfigNode::child(const std::string& key) {
  const auto* v = lookup(key, false);
  return ConfigNode(v ? *v : nlohmann::json::object(), where(key));
}

void ConfigNode::finish() const {
  for (auto it = value_.begin(); it != value_.end(); ++it)
    if (!used_.count(it.key())) throw ConfigError("unknown config key '" + where(it.key()) + "'");
}

nlohmann::json load_config(const std::string& path) {
  nlohmann::json doc = nlohmann::json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  if (doc.contains("version")) {
    if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
      throw ConfigError("config key 'version' must be 1");
  } else if (!path.empty()) {
    throw ConfigError("missing config key 'version'");
  }
  return doc;
}

}  // namespace cylab
