#include "mixhom/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mixhom::harness {

namespace {

void flatten(const boost::property_tree::ptree& tree, const std::string& prefix, std::map<std::string, std::string>& out) {
  for (const auto& [key, child] : tree) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (child.empty()) {
      std::string v = child.data();
      const auto a = v.find_first_not_of(" \t");
      const auto b = v.find_last_not_of(" \t");
      out[full] = a == std::string::npos ? "" : v.substr(a, b - a + 1);
    } else {
      flatten(child, full, out);
    }
  }
}

double parse_double(const std::string& key, const std::string& text) {
  const auto a = text.find_first_not_of(" \t");
  const auto b = text.find_last_not_of(" \t");
  if (a == std::string::npos) throw ConfigError("field '" + key + "': empty value");
  const std::string t = text.substr(a, b - a + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': expected a number, got '" + t + "'");
  }
  if (used != t.size()) throw ConfigError("field '" + key + "': expected a number, got '" + t + "'");
  if (!std::isfinite(v)) throw ConfigError("field '" + key + "': value must be finite");
  return v;
}

}  // namespace

Config Config::from_string(const std::string& text, const std::string& source) {
  Config c;
  c.source_ = source;
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(source + ": line " + std::to_string(e.line()) + ": " + e.message());
  }
  flatten(tree, "", c.values_);
  return c;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), path);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Config::require_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) throw ConfigError("field '" + key + "' is required");
  return it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const double v = parse_double(key, it->second);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("field '" + key + "': expected an integer");
  return static_cast<int>(v);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("field '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  std::vector<double> out;
  if (v.rfind("dyadic:", 0) == 0) {
    int a = 0, b = 0;
    if (std::sscanf(v.c_str() + 7, "%d:%d", &a, &b) != 2)
      throw ConfigError("field '" + key + "': expected dyadic:A:B, got '" + v + "'");
    const int step = b >= a ? 1 : -1;
    for (int i = a;; i += step) {
      out.push_back(std::ldexp(1.0, -i));
      if (i == b) break;
    }
    return out;
  }
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("field '" + key + "': empty list");
  return out;
}

void Config::check_keys(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : values_)
    if (!allowed.count(k)) throw ConfigError("field '" + k + "' is not recognised by this experiment");
}

std::string Config::canonical() const {
  std::string s;
  for (const auto& [k, v] : values_) s += k + "=" + v + "\n";
  return s;
}

std::uint64_t Config::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace mixhom::harness
