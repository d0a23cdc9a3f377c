#include <gtest/gtest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>

#include "psiorder/errors.hpp"
#include "psiorder/io.hpp"

using namespace psiorder;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("psiorder_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

TraceFile sample_trace() {
  auto tuple = FunctionTuple::from_specs({"phi=periodic:[1;|1]", "root2=periodic:[1;|2]"});
  TraceOptions options;
  options.horizon = BigInt(1000000);
  return TraceFile{tool_version(), 7, change_trace(tuple, BigInt(2), 12, options)};
}

}  // namespace

TEST(Config, ParsesKeysAndComments) {
  auto cfg = parse_config(
      "# run settings\n"
      "sources = periodic:[1;|1]  rule:e\n"
      "t0 = 5\n"
      "count=40   # trailing comment\n"
      "depth_limit = 32\n"
      "seed = 99\n"
      "\n"
      "horizon = 123456789012345678901234567890\n");
  EXPECT_EQ(cfg.sources, (std::vector<std::string>{"periodic:[1;|1]", "rule:e"}));
  EXPECT_EQ(cfg.t0, BigInt(5));
  EXPECT_EQ(cfg.count, 40u);
  EXPECT_EQ(cfg.depth_limit, 32);
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(*cfg.horizon, BigInt("123456789012345678901234567890"));
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("colour = blue\n"), ParseError);
  EXPECT_THROW(parse_config("count\n"), ParseError);
  EXPECT_THROW(parse_config("count = -3\n"), ParseError);
  EXPECT_THROW(parse_config("count = 0\n").validate(), InvalidArgument);
  EXPECT_THROW(parse_config("sources = periodic:[1;|0]\n").validate(), ParseError);
}

TEST(Config, LaterValuesOverrideBase) {
  RunConfig base;
  base.count = 3;
  base.seed = 4;
  auto cfg = parse_config("seed = 5\n", base);
  EXPECT_EQ(cfg.count, 3u);
  EXPECT_EQ(cfg.seed, 5u);
}

TEST(Output, EnvironmentDirectory) {
  RunConfig cfg;
  ::setenv("PSIORDER_OUT_DIR", "/tmp/psiorder-env-dir", 1);
  EXPECT_EQ(resolve_output(cfg, "trace.json"), fs::path("/tmp/psiorder-env-dir/trace.json"));
  cfg.output_dir = "/elsewhere";
  EXPECT_EQ(resolve_output(cfg, "trace.json"), fs::path("/elsewhere/trace.json"));
  cfg.output = "/abs/out.json";
  EXPECT_EQ(resolve_output(cfg, "trace.json"), fs::path("/abs/out.json"));
  ::unsetenv("PSIORDER_OUT_DIR");
  EXPECT_EQ(default_output_dir(), fs::path("."));
}

TEST(Output, AtomicWriteReplacesFile) {
  const auto path = scratch("atomic.txt");
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
  for (const auto& entry : fs::directory_iterator(path.parent_path())) {
    EXPECT_EQ(entry.path().string().find(".tmp."), std::string::npos);
  }
}

TEST(TraceJson, RoundTrip) {
  const auto file = sample_trace();
  const auto text = emit_trace(file);
  const auto back = parse_trace(text);
  EXPECT_EQ(back, file);
  EXPECT_EQ(emit_trace(back), text);
  EXPECT_NE(text.find("\"seed\": 7"), std::string::npos);
  EXPECT_NE(text.find("\"t0\": \"5\""), std::string::npos);
  EXPECT_NE(text.find("\"horizon\": \"1000000\""), std::string::npos);
}

TEST(TraceJson, Deterministic) { EXPECT_EQ(emit_trace(sample_trace()), emit_trace(sample_trace())); }

TEST(TraceJson, Malformed) {
  EXPECT_THROW(parse_trace("{"), ParseError);
  EXPECT_THROW(parse_trace("{\"header\": {}}"), ParseError);
  EXPECT_THROW(parse_trace("[]"), ParseError);
}

TEST(Schedule, Presets) {
  auto s = parse_schedule("extremal:k=3:cycles=4");
  EXPECT_EQ(s.events.size(), 12u);
  EXPECT_EQ(parse_schedule("triple").labels.size(), 3u);
  auto j = parse_schedule(R"({"events": [["a"], ["b"], ["a", "b"]], "prefixes": {"a": ["0", "2"]}})");
  EXPECT_EQ(j.labels, (std::vector<Label>{"a", "b"}));
  EXPECT_EQ(j.prefixes.at("a")[1], 2);
  EXPECT_THROW(parse_schedule("extremal:k=3:speed=2"), ParseError);
  EXPECT_THROW(parse_schedule("{not json"), ParseError);
}

TEST(Staircase, GoldenRatioToThirteen) {
  auto tuple = FunctionTuple::from_specs({"phi=periodic:[1;|1]"});
  auto points = staircase_points(tuple, BigInt(13));
  EXPECT_EQ(step_count(points, "phi"), 6u);
  std::vector<std::string> ts;
  for (const auto& p : points) ts.push_back(to_string(p.t) + (p.jump ? "" : "*"));
  EXPECT_EQ(ts, (std::vector<std::string>{"1", "2", "3", "4*", "5", "6*", "8", "9*", "13"}));
  const Rational first = parse_rational("0.381966011250105151795413165634");
  EXPECT_LE(parse_rational(points[0].lo), first);
  EXPECT_GE(parse_rational(points[0].hi) + pow10_inverse(29), first);
  EXPECT_LT(parse_rational(points[0].hi) - parse_rational(points[0].lo), pow10_inverse(28));
  for (std::size_t i = 1; i < points.size(); ++i) {
    EXPECT_LE(parse_rational(points[i].lo), parse_rational(points[i - 1].hi));
  }
}

TEST(Staircase, CsvRoundTrip) {
  auto tuple = FunctionTuple::from_specs({"a=periodic:[1;|2]", "b=rule:e"});
  auto points = staircase_points(tuple, BigInt(500));
  const auto csv = staircase_csv(points);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,t,kind,level,lo,hi");
  auto back = parse_staircase_csv(csv);
  EXPECT_EQ(back, points);
  EXPECT_EQ(step_count(back, "a"), step_count(points, "a"));
  EXPECT_EQ(step_count(back, "b"), step_count(points, "b"));
}

TEST(Staircase, EmptyTraceGivesHeaderOnly) {
  ChangeTrace empty;
  EXPECT_EQ(staircase_csv(staircase_points(empty)), "label,t,kind,level,lo,hi\n");
  EXPECT_THROW(parse_staircase_csv("t,lo\n1,2\n"), ParseError);
}

TEST(Staircase, FromTrace) {
  auto file = sample_trace();
  auto points = staircase_points(file.trace);
  EXPECT_GT(step_count(points, "phi"), 0u);
  const auto& horizon = file.trace.entries.back().t;
  bool reaches = false;
  for (const auto& p : points) {
    EXPECT_LE(p.t, horizon);
    reaches = reaches || (p.jump && p.t == horizon);
  }
  EXPECT_TRUE(reaches);
}
