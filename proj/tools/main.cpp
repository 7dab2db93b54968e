#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixhom/harness/config.hpp"
#include "mixhom/harness/experiments.hpp"
#include "mixhom/harness/report.hpp"
#include "mixhom/harness/suite.hpp"

namespace mh = mixhom::harness;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;

mh::Config load_config(const std::string& path, const std::vector<std::string>& overrides) {
  mh::Config c = mh::Config::from_file(path);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw mh::ConfigError("--set expects key=value, got '" + kv + "'");
    c.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return c;
}

std::filesystem::path resolve_root(const std::string& out) {
  return out.empty() ? mh::output_root("out") : std::filesystem::path(out);
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides, const std::string& out) {
  mh::Config c;
  try {
    c = load_config(path, overrides);
    mh::validate(c);
  } catch (const mh::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  }
  try {
    const mh::Report rep = mh::run_experiment(c);
    const auto dir = resolve_root(out) / c.get_string("output_dir", rep.experiment);
    mh::emit_report(rep, c, dir);
    for (const auto& [k, v] : rep.rows) std::printf("%-32s %s\n", k.c_str(), mh::format_number(v).c_str());
    std::printf("wrote %s\n", dir.string().c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  }
  return kPass;
}

int cmd_suite(const std::string& file, int jobs, const std::string& out) {
  mh::Suite s;
  try {
    s = mh::load_suite(file);
  } catch (const mh::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  }
  mh::SuiteOptions opt;
  opt.jobs = jobs;
  opt.output_root = resolve_root(out);
  const auto res = mh::run_suite(s, opt);
  for (const auto& e : res.entries) {
    std::printf("[%s] %s (%.1f s)\n", e.passed ? "PASS" : "FAIL", e.name.c_str(), e.seconds);
    for (const auto& f : e.failures) std::printf("    %s\n", f.c_str());
  }
  std::printf("%zu experiment(s), %s\n", res.entries.size(), res.passed() ? "all passed" : "FAILED");
  return res.exit_code();
}

int cmd_list() {
  for (const auto& e : mh::experiments()) {
    std::printf("%-20s %s\n", e.name.c_str(), e.summary.c_str());
    std::string keys;
    for (const auto& k : e.keys) keys += (keys.empty() ? "" : ", ") + k;
    std::printf("%-20s keys: %s\n", "", keys.c_str());
  }
  return kPass;
}

int cmd_validate(const std::string& path, const std::vector<std::string>& overrides) {
  try {
    const mh::Config c = load_config(path, overrides);
    mh::validate(c);
    std::printf("ok %s (hash %s)\n", path.c_str(), mh::hex64(c.hash()).c_str());
    return kPass;
  } catch (const mh::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on mixed homogeneity singular integrals and square functions"};
  app.require_subcommand(1);

  std::string config, suite_file, out;
  std::vector<std::string> overrides;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "run one experiment from a config file");
  run->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  run->add_option("--set", overrides, "override a config key (key=value), repeatable");
  run->add_option("--out", out, "output root (default: $MIXHOM_OUTPUT_ROOT or ./out)");

  auto* suite = app.add_subcommand("suite", "run a JSON suite and evaluate its assertions");
  suite->add_option("--file", suite_file, "suite file")->required()->check(CLI::ExistingFile);
  suite->add_option("--jobs", jobs, "parallel experiments")->check(CLI::Range(1, 64));
  suite->add_option("--out", out, "output root (default: $MIXHOM_OUTPUT_ROOT or ./out)");

  auto* list = app.add_subcommand("list-experiments", "list experiment names and their keys");

  auto* val = app.add_subcommand("validate", "check a config without running it");
  val->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  val->add_option("--set", overrides, "override a config key (key=value), repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kConfigError;
  }

  if (*run) return cmd_run(config, overrides, out);
  if (*suite) return cmd_suite(suite_file, jobs, out);
  if (*list) return cmd_list();
  if (*val) return cmd_validate(config, overrides);
  return kConfigError;
}
