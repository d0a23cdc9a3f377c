#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <sstream>

#include "psiorder/cli.hpp"
#include "psiorder/io.hpp"

using namespace psiorder;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "psiorder");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("psiorder_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

Json error_of(const Run& r) { return Json::parse(r.err); }

}  // namespace

TEST(Cli, PiForFive) {
  auto r = run({"pi", "--k", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["order"], 5);
  EXPECT_EQ(doc["cycle_count"], 3);
  EXPECT_EQ(doc["mapping"][0]["receives"], "u_{2,2}");
  auto text = run({"pi", "--k", "3", "--text"});
  EXPECT_NE(text.out.find("order 3, 2 cycles"), std::string::npos);
}

TEST(Cli, Expand) {
  auto r = run({"expand", "--sources", "periodic:[1;|2]", "--count", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["tables"][0]["convergents"][4]["q"], "29");
  EXPECT_EQ(doc["header"]["seed"], 0);
}

TEST(Cli, PsiWithOracle) {
  auto r = run({"psi", "--sources", "periodic:[1;|1]", "--t", "4", "12", "--digits", "20", "--oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["values"][0]["m"], 3);
  const Rational expected = parse_rational("0.145898033750315455386239496903");
  const Rational lo = parse_rational(doc["values"][0]["lo"].get<std::string>());
  const Rational hi = parse_rational(doc["values"][0]["hi"].get<std::string>());
  EXPECT_LE(lo, expected);
  EXPECT_GE(hi + pow10_inverse(25), expected);
  EXPECT_LT(hi - lo, pow10_inverse(18));
  EXPECT_EQ(doc["values"][1]["oracle"]["agrees"], true);
  auto capped = run({"psi", "--sources", "periodic:[1;|1]", "--t", "500", "--oracle", "--oracle-cap", "100"});
  EXPECT_EQ(capped.code, 2);
  EXPECT_EQ(error_of(capped)["kind"], "CapExceeded");
}

TEST(Cli, TraceWritesFileAndIsReproducible) {
  const auto dir = scratch_dir();
  const auto a = (dir / "a.json").string(), b = (dir / "b.json").string();
  const std::vector<std::string> common{"trace", "--sources", "periodic:[1;|1]", "periodic:[1;|2]",
                                        "--t0", "2", "--count", "20"};
  auto args_a = common, args_b = common;
  args_a.insert(args_a.end(), {"--out", a});
  args_b.insert(args_b.end(), {"--out", b});
  auto ra = run(args_a), rb = run(args_b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  EXPECT_EQ(read_file(a), read_file(b));
  auto file = parse_trace(read_file(a));
  EXPECT_EQ(file.trace.moments(), 20u);
  EXPECT_EQ(file.trace.header.t0, 5);
}

TEST(Cli, TraceUsesEnvironmentDirectory) {
  const auto dir = scratch_dir() / "env";
  ::setenv("PSIORDER_OUT_DIR", dir.c_str(), 1);
  auto r = run({"trace", "--sources", "periodic:[1;|1]", "periodic:[1;|2]", "--count", "3"});
  ::unsetenv("PSIORDER_OUT_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "trace.json"));
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = scratch_dir();
  const auto cfg = (dir / "run.cfg").string();
  write_file_atomic(cfg, "sources = periodic:[1;|1] periodic:[1;|2]\ncount = 4\nseed = 11\n");
  const auto out = (dir / "cfg_trace.json").string();
  auto r = run({"trace", "--config", cfg, "--count", "6", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  auto file = parse_trace(read_file(out));
  EXPECT_EQ(file.trace.moments(), 6u);
  EXPECT_EQ(file.seed, 11u);
}

TEST(Cli, VerifyMockTrace) {
  ChangeTrace trace;
  trace.header.sources = {{"A", "rule:e"}, {"B", "rule:e"}, {"C", "rule:e"}};
  for (int i = 0; i < 7; ++i) {
    TraceEntry e;
    e.t = BigInt(10 * (i + 1));
    e.order.labels = i % 2 ? std::vector<Label>{"C", "B", "A"} : std::vector<Label>{"A", "B", "C"};
    e.jumping = i % 2 ? std::vector<Label>{"A", "B"} : std::vector<Label>{"C", "B"};
    trace.entries.push_back(e);
  }
  const auto path = (scratch_dir() / "mock.json").string();
  write_file_atomic(path, emit_trace(TraceFile{tool_version(), 0, trace}));
  auto r = run({"verify", "--k", "2", "--trace", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(r.out);
  EXPECT_EQ(doc["report"]["all_pass"], true);
  for (const char* item : {"i", "ii", "iii", "iv", "v", "vi"}) {
    EXPECT_EQ(doc["report"]["items"][item]["status"], "pass") << item;
  }
}

TEST(Cli, SynthAndExport) {
  const auto dir = scratch_dir();
  auto r = run({"synth", "--schedule", "extremal:k=3:cycles=2", "--out-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto doc = Json::parse(read_file(dir / "synthesis.json"));
  EXPECT_EQ(doc["replay"], "ok");
  EXPECT_EQ(doc["sources"].size(), 6u);

  auto e = run({"export", "--sources", "phi=periodic:[1;|1]", "--horizon", "13", "--out-dir", dir.string()});
  ASSERT_EQ(e.code, 0) << e.err;
  auto points = parse_staircase_csv(read_file(dir / "staircase.csv"));
  EXPECT_EQ(step_count(points, "phi"), 6u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  auto bad = run({"pi"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(error_of(bad)["kind"], "UsageError");
  auto parse = run({"expand", "--sources", "periodic:[1;|0]"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_EQ(error_of(parse)["kind"], "ParseError");

  auto undecided = run({"trace", "--sources", "periodic:[1;|1]", "periodic:[2;|1]", "--depth-limit", "8",
                        "--out", (scratch_dir() / "never.json").string()});
  EXPECT_EQ(undecided.code, 3);
  EXPECT_EQ(error_of(undecided)["kind"], "ComparisonUndecided");

  auto exhausted = run({"expand", "--sources", "explicit:[1;2]", "--count", "3"});
  EXPECT_EQ(exhausted.code, 0);  // expand stops at the end of a finite source
  auto short_trace = run({"trace", "--sources", "periodic:[1;|1]", "explicit:[1;2,2,2]", "--count", "30",
                          "--out", (scratch_dir() / "short.json").string()});
  EXPECT_EQ(short_trace.code, 4);
  EXPECT_EQ(error_of(short_trace)["kind"], "SourceExhausted");

  const auto sched = (scratch_dir() / "bad_schedule.json").string();
  write_file_atomic(sched, R"({"events": [["f", "g"]], "prefixes": {"f": [0, 3], "g": [0, 5, 1]}})");
  auto infeasible = run({"synth", "--schedule", "@" + sched, "--out-dir", scratch_dir().string()});
  EXPECT_EQ(infeasible.code, 4);
  EXPECT_EQ(error_of(infeasible)["kind"], "InfeasibleSchedule");
}

TEST(Cli, Help) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("trace"), std::string::npos);
}
