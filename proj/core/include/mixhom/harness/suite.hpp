#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mixhom/harness/config.hpp"
#include "mixhom/harness/report.hpp"

namespace mixhom::harness {

enum class Comparator { Less, LessEqual, Greater, GreaterEqual };

struct Assertion {
  std::string row;
  Comparator op = Comparator::Less;
  double value = 0.0;
};

bool holds(const Assertion& a, double observed);
std::string describe(const Assertion& a);

struct SuiteEntry {
  /// Also the output subdirectory; [A-Za-z0-9_-]+.
  std::string name;
  Config config;
  std::vector<Assertion> assertions;
};

struct Suite {
  std::vector<SuiteEntry> entries;
};

/// JSON suite:
///   {"experiments": [{"name": ..., "config": "path.ini", "set": {"key": "value"},
///                     "assertions": [{"row": ..., "op": "<", "value": 1e-10}]}]}
/// Config paths resolve relative to the suite file. Every entry is validated.
/// Throws ConfigError on malformed input.
Suite load_suite(const std::filesystem::path& file);
Suite parse_suite(const std::string& json_text, const std::filesystem::path& base_dir, const std::string& source);

struct EntryOutcome {
  std::string name;
  bool passed = false;
  /// Failed assertions, or the exception text.
  std::vector<std::string> failures;
  Report report;
  double seconds = 0.0;
};

struct SuiteResult {
  std::vector<EntryOutcome> entries;
  bool passed() const;
  /// 0 all pass, 1 any failure.
  int exit_code() const { return passed() ? 0 : 1; }
};

struct SuiteOptions {
  int jobs = 1;
  /// Each entry writes into output_root / entry.name; empty disables report files.
  std::filesystem::path output_root;
};

SuiteResult run_suite(const Suite& suite, const SuiteOptions& opt = {});

/// MIXHOM_OUTPUT_ROOT if set and non-empty, else `fallback`.
std::filesystem::path output_root(const std::filesystem::path& fallback);

}  // namespace mixhom::harness
