#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mixhom/harness/config.hpp"
#include "mixhom/harness/experiments.hpp"
#include "mixhom/harness/report.hpp"
#include "mixhom/harness/suite.hpp"

using namespace mixhom::harness;
namespace fs = std::filesystem;

namespace {

const char* kSmallCalderon = R"(
experiment = calderon-condition
n = 2
N = 64
L = 8
j_min = -1
j_max = 2
k_min = -1
k_max = 2
fields = 2
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mixhom_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, ParsesSectionsCommentsAndLists) {
  const Config c = Config::from_string(
      "# comment\nexperiment = reconstruct\nN = 64\n; other\n[kernel]\nk = 0.5\n"
      "eps = dyadic:2:4\nlist = 1, 0.5,0.25\nflag = true\n");
  EXPECT_EQ(c.require_string("experiment"), "reconstruct");
  EXPECT_EQ(c.get_int("N", 0), 64);
  EXPECT_DOUBLE_EQ(c.get_double("kernel.k", 0.0), 0.5);
  EXPECT_EQ(c.get_list("kernel.eps", {}), (std::vector<double>{0.25, 0.125, 0.0625}));
  EXPECT_EQ(c.get_list("kernel.list", {}), (std::vector<double>{1.0, 0.5, 0.25}));
  EXPECT_TRUE(c.get_bool("kernel.flag", false));
  EXPECT_EQ(c.get_int("missing", 7), 7);
}

TEST(Config, ErrorsNameTheField) {
  const Config c = Config::from_string("N = sixty\nk = 0.5x\nflag = maybe\n");
  auto message = [](auto&& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message([&] { c.get_int("N", 0); }).find("'N'"), std::string::npos);
  EXPECT_NE(message([&] { c.get_double("k", 0); }).find("'k'"), std::string::npos);
  EXPECT_NE(message([&] { c.get_bool("flag", false); }).find("'flag'"), std::string::npos);
  EXPECT_NE(message([&] { c.require_string("experiment"); }).find("'experiment'"), std::string::npos);
  EXPECT_NE(message([&] { c.check_keys({"N", "k"}); }).find("'flag'"), std::string::npos);
  EXPECT_THROW(Config::from_file("/nonexistent/x.ini"), ConfigError);
  EXPECT_THROW(Config::from_string("[broken\n"), ConfigError);
}

TEST(Config, CanonicalFormIgnoresOrderAndHashTracksValues) {
  const Config a = Config::from_string("a = 1\nb = 2\n");
  const Config b = Config::from_string("b=2\n\na   =   1\n");
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_EQ(a.hash(), b.hash());
  Config c = a;
  c.set("b", "3");
  EXPECT_NE(a.hash(), c.hash());
  c.set("b", "2");
  EXPECT_EQ(a.hash(), c.hash());
  EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(Report, EmptyReportWritesHeaderOnlyRows) {
  const fs::path dir = scratch("empty");
  Report r;
  r.experiment = "none";
  const auto files = emit_report(r, Config::from_string("experiment = none\n"), dir);
  EXPECT_EQ(slurp(dir / "rows.csv"), "name,value\n");
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
  EXPECT_EQ(files.size(), 2u);
  fs::remove_all(dir);
}

TEST(Report, NumberFormattingRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  Table t{"t", {"x", "y"}, {{1.0, 2.0}}};
  EXPECT_EQ(to_csv(t), "x,y\n1,2\n");
  EXPECT_THROW(t.column("z"), std::out_of_range);
}

TEST(Report, RejectsUnwritableDirectory) {
  Report r;
  EXPECT_THROW(emit_report(r, Config::from_string(""), "/proc/mixhom/denied"), std::runtime_error);
}

TEST(Experiments, UnknownExperimentAndBadValuesAreConfigErrors) {
  EXPECT_THROW(validate(Config::from_string("experiment = nope\n")), ConfigError);
  EXPECT_THROW(run_experiment(Config::from_string("experiment = nope\n")), ConfigError);
  Config c = Config::from_string(kSmallCalderon);
  c.set("typo_key", "1");
  EXPECT_THROW(validate(c), ConfigError);
  Config d = Config::from_string(kSmallCalderon);
  d.set("N", "-4");
  EXPECT_THROW(validate(d), ConfigError);
  Config e = Config::from_string("experiment = truncation-sweep\nN = 64\nL = 8\neps = 0.25, 0.5\n");
  EXPECT_THROW(validate(e), ConfigError);
  EXPECT_GE(experiments().size(), 10u);
}

TEST(Experiments, TruncationSweepTableHasDeclaredColumns) {
  const Report r = run_experiment(Config::from_string("experiment = truncation-sweep\nN = 64\nL = 8\n"));
  bool found = false;
  for (const auto& t : r.tables)
    if (t.name == "sweep") {
      found = true;
      EXPECT_EQ(t.columns, (std::vector<std::string>{"epsilon", "l2_ratio", "cauchy_diff"}));
      EXPECT_FALSE(t.rows.empty());
      EXPECT_TRUE(std::isnan(t.rows.front()[2]));
    }
  EXPECT_TRUE(found);
}

TEST(Experiments, RerunsAreByteIdentical) {
  const Config c = Config::from_string(kSmallCalderon);
  const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
  const auto fa = emit_report(run_experiment(c), c, a);
  const auto fb = emit_report(run_experiment(c), c, b);
  ASSERT_EQ(fa, fb);
  for (const auto& f : fa) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Suite, EmptySuitePasses) {
  const Suite s = parse_suite(R"({"experiments": []})", ".", "<test>");
  EXPECT_TRUE(s.entries.empty());
  EXPECT_EQ(run_suite(s).exit_code(), 0);
}

TEST(Suite, FailingAssertionIsNamed) {
  Suite s;
  s.entries.push_back({"strict", Config::from_string(kSmallCalderon), {{"partition_max_deviation", Comparator::Less, -1.0}}});
  s.entries.push_back({"missing", Config::from_string(kSmallCalderon), {{"no_such_row", Comparator::Less, 1.0}}});
  s.entries.push_back({"fine", Config::from_string(kSmallCalderon), {{"partition_max_deviation", Comparator::Less, 1e-10}}});
  SuiteOptions opt;
  opt.jobs = 2;
  const SuiteResult res = run_suite(s, opt);
  EXPECT_EQ(res.exit_code(), 1);
  ASSERT_EQ(res.entries.size(), 3u);
  EXPECT_FALSE(res.entries[0].passed);
  ASSERT_FALSE(res.entries[0].failures.empty());
  EXPECT_NE(res.entries[0].failures[0].find("partition_max_deviation"), std::string::npos);
  EXPECT_FALSE(res.entries[1].passed);
  EXPECT_NE(res.entries[1].failures[0].find("no_such_row"), std::string::npos);
  EXPECT_TRUE(res.entries[2].passed);
}

TEST(Suite, MalformedSuitesAreConfigErrors) {
  EXPECT_THROW(parse_suite("{", ".", "<t>"), ConfigError);
  EXPECT_THROW(parse_suite(R"({"experiments": {}})", ".", "<t>"), ConfigError);
  EXPECT_THROW(parse_suite(R"({"experiments": [{"name": "a b", "config": "x.ini"}]})", ".", "<t>"), ConfigError);
  EXPECT_THROW(parse_suite(R"({"experiments": [{"name": "a", "config": "missing.ini"}]})", ".", "<t>"), ConfigError);
  const fs::path dir = scratch("suite");
  fs::create_directories(dir);
  std::ofstream(dir / "c.ini") << kSmallCalderon;
  const std::string dup = R"({"experiments": [{"name": "a", "config": "c.ini"}, {"name": "a", "config": "c.ini"}]})";
  EXPECT_THROW(parse_suite(dup, dir, "<t>"), ConfigError);
  const std::string badop =
      R"({"experiments": [{"name": "a", "config": "c.ini", "assertions": [{"row": "r", "op": "==", "value": 1}]}]})";
  EXPECT_THROW(parse_suite(badop, dir, "<t>"), ConfigError);
  const std::string ok = R"({"experiments": [{"name": "a", "config": "c.ini", "set": {"fields": 1}}]})";
  const Suite s = parse_suite(ok, dir, "<t>");
  EXPECT_EQ(s.entries.at(0).config.get_int("fields", 0), 1);
  fs::remove_all(dir);
}

TEST(Suite, OutputRootHonoursEnvironment) {
  ::setenv("MIXHOM_OUTPUT_ROOT", "/tmp/elsewhere", 1);
  EXPECT_EQ(output_root("out"), fs::path("/tmp/elsewhere"));
  ::setenv("MIXHOM_OUTPUT_ROOT", "", 1);
  EXPECT_EQ(output_root("out"), fs::path("out"));
  ::unsetenv("MIXHOM_OUTPUT_ROOT");
}
