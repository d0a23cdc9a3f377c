#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "psiorder/order.hpp"
#include "psiorder/synth.hpp"
#include "psiorder/verify.hpp"

namespace psiorder {

using Json = nlohmann::ordered_json;

std::string tool_version();

// Settings shared by every subcommand. Loaded from a key = value file, then
// overridden by flags.
struct RunConfig {
  std::vector<std::string> sources;
  std::optional<BigInt> t0;
  std::optional<BigInt> horizon;
  std::size_t count = 20;
  int depth_limit = kDefaultDepthLimit;
  long oracle_cap = kDefaultOracleCap;
  std::size_t max_events = 100000;
  std::string output;      // file path; empty means stdout or a default name
  std::string output_dir;  // empty means $PSIORDER_OUT_DIR, then "."
  std::uint64_t seed = 0;

  void validate() const;  // throws InvalidArgument
};

// Lines "key = value"; '#' starts a comment. Keys: sources (whitespace
// separated), t0, horizon, count, depth_limit, oracle_cap, max_events,
// output, output_dir, seed. Throws ParseError.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

std::filesystem::path default_output_dir();  // $PSIORDER_OUT_DIR or "."
std::filesystem::path resolve_output(const RunConfig& config, const std::string& default_name);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

struct TraceFile {
  std::string tool_version;
  std::uint64_t seed = 0;
  ChangeTrace trace;

  friend bool operator==(const TraceFile&, const TraceFile&) = default;
};

Json to_json(const TraceFile& file);
TraceFile trace_file_from_json(const Json& doc);  // throws ParseError
std::string emit_trace(const TraceFile& file);    // deterministic text, trailing newline
TraceFile parse_trace(std::string_view text);

Json to_json(const VerificationReport& report);
Json to_json(const BeforeJumpResult& result);
Json to_json(const JumpSchedule& schedule);
Json to_json(const SynthesisResult& result, std::uint64_t seed);

// "extremal:k=<k>:cycles=<c>", "triple", or a JSON document
// {"labels": [...], "events": [[...], ...], "prefixes": {label: [a0, a1, ...]}}.
JumpSchedule parse_schedule(std::string_view text);

/// One CSV row of a staircase plot.
struct StaircasePoint {
  Label label;
  BigInt t;
  bool jump = false;  // t is a denominator; otherwise an interior sample
  std::size_t level = 0;
  std::string lo;  // decimal, rounded down
  std::string hi;  // decimal, rounded up

  friend bool operator==(const StaircasePoint&, const StaircasePoint&) = default;
};

inline constexpr int kCsvDigits = 30;

// Rows for every distinct denominator t <= horizon and one interior sample
// per gap between consecutive denominators (and before the horizon).
std::vector<StaircasePoint> staircase_points(const FunctionTuple& tuple, const BigInt& horizon,
                                             int digits = kCsvDigits);
// Uses the trace's sources and its last entry as horizon; none for an empty trace.
std::vector<StaircasePoint> staircase_points(const ChangeTrace& trace, int digits = kCsvDigits);

std::string staircase_csv(const std::vector<StaircasePoint>& points);
std::vector<StaircasePoint> parse_staircase_csv(std::string_view text);
std::size_t step_count(const std::vector<StaircasePoint>& points, const Label& label);

}  // namespace psiorder
