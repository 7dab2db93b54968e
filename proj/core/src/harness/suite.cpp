#include "mixhom/harness/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mixhom/harness/experiments.hpp"

namespace mixhom::harness {

namespace {

Comparator parse_op(const std::string& s, const std::string& where) {
  if (s == "<") return Comparator::Less;
  if (s == "<=") return Comparator::LessEqual;
  if (s == ">") return Comparator::Greater;
  if (s == ">=") return Comparator::GreaterEqual;
  throw ConfigError(where + ": unknown comparator '" + s + "'");
}

const char* op_text(Comparator c) {
  switch (c) {
    case Comparator::Less: return "<";
    case Comparator::LessEqual: return "<=";
    case Comparator::Greater: return ">";
    case Comparator::GreaterEqual: return ">=";
  }
  return "?";
}

std::string scalar_text(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  throw ConfigError(where + ": override values must be scalars");
}

EntryOutcome run_entry(const SuiteEntry& e, const SuiteOptions& opt) {
  EntryOutcome out;
  out.name = e.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    out.report = run_experiment(e.config);
    if (!opt.output_root.empty()) emit_report(out.report, e.config, opt.output_root / e.name);
    for (const auto& a : e.assertions) {
      const auto v = out.report.find(a.row);
      if (!v)
        out.failures.push_back("row '" + a.row + "' missing");
      else if (!holds(a, *v))
        out.failures.push_back(describe(a) + " failed: observed " + format_number(*v));
    }
  } catch (const std::exception& ex) {
    out.failures.push_back(std::string("error: ") + ex.what());
  }
  out.passed = out.failures.empty();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

bool holds(const Assertion& a, double v) {
  switch (a.op) {
    case Comparator::Less: return v < a.value;
    case Comparator::LessEqual: return v <= a.value;
    case Comparator::Greater: return v > a.value;
    case Comparator::GreaterEqual: return v >= a.value;
  }
  return false;
}

std::string describe(const Assertion& a) { return a.row + " " + op_text(a.op) + " " + format_number(a.value); }

Suite parse_suite(const std::string& text, const std::filesystem::path& base_dir, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ConfigError(source + ": " + ex.what());
  }
  if (!j.is_object() || !j.contains("experiments") || !j["experiments"].is_array())
    throw ConfigError(source + ": expected an object with an 'experiments' array");
  static const std::regex name_re("[A-Za-z0-9_-]+");
  Suite s;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j["experiments"].size(); ++i) {
    const auto& ej = j["experiments"][i];
    const std::string where = source + ": experiments[" + std::to_string(i) + "]";
    if (!ej.is_object()) throw ConfigError(where + ": expected an object");
    if (!ej.contains("name") || !ej["name"].is_string()) throw ConfigError(where + ": missing string 'name'");
    SuiteEntry e;
    e.name = ej["name"].get<std::string>();
    if (!std::regex_match(e.name, name_re)) throw ConfigError(where + ": name '" + e.name + "' has invalid characters");
    if (!seen.insert(e.name).second) throw ConfigError(where + ": duplicate name '" + e.name + "'");
    if (!ej.contains("config") || !ej["config"].is_string()) throw ConfigError(where + ": missing string 'config'");
    std::filesystem::path cfg = ej["config"].get<std::string>();
    if (cfg.is_relative()) cfg = base_dir / cfg;
    e.config = Config::from_file(cfg.string());
    if (ej.contains("set")) {
      if (!ej["set"].is_object()) throw ConfigError(where + ": 'set' must be an object");
      for (const auto& [k, v] : ej["set"].items()) e.config.set(k, scalar_text(v, where + ".set." + k));
    }
    if (ej.contains("assertions")) {
      if (!ej["assertions"].is_array()) throw ConfigError(where + ": 'assertions' must be an array");
      for (const auto& aj : ej["assertions"]) {
        if (!aj.is_object() || !aj.contains("row") || !aj.contains("op") || !aj.contains("value") ||
            !aj["row"].is_string() || !aj["op"].is_string() || !aj["value"].is_number())
          throw ConfigError(where + ": assertions need string 'row', string 'op' and numeric 'value'");
        e.assertions.push_back({aj["row"].get<std::string>(), parse_op(aj["op"].get<std::string>(), where),
                                aj["value"].get<double>()});
      }
    }
    try {
      validate(e.config);
    } catch (const ConfigError& ex) {
      throw ConfigError(where + " (" + e.name + "): " + ex.what());
    }
    s.entries.push_back(std::move(e));
  }
  return s;
}

Suite load_suite(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open suite '" + file.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_suite(ss.str(), file.parent_path(), file.string());
}

bool SuiteResult::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const EntryOutcome& e) { return e.passed; });
}

SuiteResult run_suite(const Suite& suite, const SuiteOptions& opt) {
  SuiteResult res;
  res.entries.resize(suite.entries.size());
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(suite.entries.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suite.entries.size(); i = next++) res.entries[i] = run_entry(suite.entries[i], opt);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return res;
}

std::filesystem::path output_root(const std::filesystem::path& fallback) {
  const char* env = std::getenv("MIXHOM_OUTPUT_ROOT");
  return env && *env ? std::filesystem::path(env) : fallback;
}

}  // namespace mixhom::harness
