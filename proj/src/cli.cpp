#include "psiorder/cli.hpp"

#include <CLI11.hpp>

#include <string>
#include <vector>

#include "psiorder/errors.hpp"
#include "psiorder/io.hpp"
#include "psiorder/synth.hpp"
#include "psiorder/triangle.hpp"
#include "psiorder/verify.hpp"

namespace psiorder {

namespace {

struct Flags {
  std::string config;
  std::vector<std::string> sources;
  std::string t0, horizon;
  std::size_t count = 0;
  int depth_limit = 0;
  long oracle_cap = 0;
  std::size_t max_events = 0;
  std::string output, output_dir;
  std::uint64_t seed = 0;
};

struct Options {
  CLI::Option* sources = nullptr;
  CLI::Option* t0 = nullptr;
  CLI::Option* horizon = nullptr;
  CLI::Option* count = nullptr;
  CLI::Option* depth_limit = nullptr;
  CLI::Option* oracle_cap = nullptr;
  CLI::Option* max_events = nullptr;
  CLI::Option* output = nullptr;
  CLI::Option* output_dir = nullptr;
  CLI::Option* seed = nullptr;
};

RunConfig build_config(const Flags& f, const Options& o) {
  RunConfig cfg;
  if (!f.config.empty()) cfg = load_config(f.config);
  if (o.sources->count()) cfg.sources = f.sources;
  if (o.t0->count()) cfg.t0 = parse_bigint(f.t0);
  if (o.horizon->count()) cfg.horizon = parse_bigint(f.horizon);
  if (o.count->count()) cfg.count = f.count;
  if (o.depth_limit->count()) cfg.depth_limit = f.depth_limit;
  if (o.oracle_cap->count()) cfg.oracle_cap = f.oracle_cap;
  if (o.max_events->count()) cfg.max_events = f.max_events;
  if (o.output->count()) cfg.output = f.output;
  if (o.output_dir->count()) cfg.output_dir = f.output_dir;
  if (o.seed->count()) cfg.seed = f.seed;
  cfg.validate();
  return cfg;
}

Json header_json(const RunConfig& cfg) {
  return Json{{"tool", "psiorder"},
              {"version", tool_version()},
              {"seed", cfg.seed},
              {"generator", std::string(kSeededGenerator)},
              {"sources", cfg.sources},
              {"depth_limit", cfg.depth_limit}};
}

FunctionTuple require_tuple(const RunConfig& cfg, std::size_t at_least = 1) {
  if (cfg.sources.size() < at_least) {
    throw InvalidArgument("need at least " + std::to_string(at_least) + " source(s); pass --sources");
  }
  return FunctionTuple::from_specs(cfg.sources);
}

// Writes to the configured file if one was requested, else to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
  } else {
    write_file_atomic(resolve_output(cfg, cfg.output), text);
  }
}

// Always writes a file; prints its path.
void emit_file(const RunConfig& cfg, std::ostream& out, const std::string& default_name,
               const std::string& text) {
  const auto path = resolve_output(cfg, default_name);
  write_file_atomic(path, text);
  out << path.string() << "\n";
}

ChangeTrace build_trace(const RunConfig& cfg) {
  const auto tuple = require_tuple(cfg);
  TraceOptions options;
  options.depth_limit = cfg.depth_limit;
  options.max_events = cfg.max_events;
  options.horizon = cfg.horizon;
  const BigInt t0 = cfg.t0 ? *cfg.t0 : earliest_start(tuple);
  return change_trace(tuple, t0, cfg.count, options);
}

std::string value_digits(const RationalBracket& b, int digits, bool up) {
  return to_decimal(up ? b.hi : b.lo, digits, up);
}

int run_expand(const RunConfig& cfg, std::ostream& out) {
  const auto tuple = require_tuple(cfg);
  Json tables = Json::array();
  for (const auto& member : tuple.members) {
    ConvergentTable table(member.source);
    Json rows = Json::array();
    for (std::size_t m = 0; m < cfg.count && table.try_ensure(m); ++m) {
      rows.push_back(Json{{"m", m},
                          {"a", to_string(table.a(m))},
                          {"p", to_string(table.p(m))},
                          {"q", to_string(table.q(m))}});
    }
    tables.push_back(Json{{"label", member.label}, {"spec", member.source.spec()}, {"convergents", rows}});
  }
  emit(cfg, out, Json{{"header", header_json(cfg)}, {"tables", tables}}.dump(2) + "\n");
  return kExitOk;
}

int run_psi(const RunConfig& cfg, std::ostream& out, const std::vector<std::string>& ts, bool left,
            int digits, bool oracle) {
  const auto tuple = require_tuple(cfg);
  if (ts.empty()) throw InvalidArgument("psi needs at least one --t");
  if (digits < 1 || digits > 1000) throw InvalidArgument("--digits must be in 1..1000");
  const Rational width = pow10_inverse(static_cast<unsigned>(digits));
  Json values = Json::array();
  for (const auto& member : tuple.members) {
    PsiFunction f(member.label, member.source);
    for (const auto& text : ts) {
      const BigInt t = parse_bigint(text);
      if (t < 1) throw InvalidArgument("t must be >= 1");
      auto e = left ? f.left_limit(t, width) : f.at(t, width);
      Json row{{"label", member.label},
               {"t", to_string(t)},
               {"m", e.m},
               {"q", to_string(e.q)},
               {"lo", value_digits(e.value, digits, false)},
               {"hi", value_digits(e.value, digits, true)}};
      if (oracle) {
        if (left) throw InvalidArgument("--oracle applies to psi values, not left limits");
        if (t > cfg.oracle_cap) throw CapExceeded("t exceeds the oracle cap " + std::to_string(cfg.oracle_cap));
        const auto check = brute_force_psi(member.source, t.get_si(), width, cfg.oracle_cap);
        row["oracle"] = Json{{"lo", value_digits(check, digits, false)},
                             {"hi", value_digits(check, digits, true)},
                             {"agrees", check.overlaps(e.value)}};
      }
      values.push_back(std::move(row));
    }
  }
  emit(cfg, out, Json{{"header", header_json(cfg)}, {"values", values}}.dump(2) + "\n");
  return kExitOk;
}

int run_trace(const RunConfig& cfg, std::ostream& out) {
  TraceFile file{tool_version(), cfg.seed, build_trace(cfg)};
  emit_file(cfg, out, "trace.json", emit_trace(file));
  return kExitOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out, int k, const std::string& trace_path) {
  ChangeTrace trace;
  std::uint64_t seed = cfg.seed;
  if (!trace_path.empty()) {
    auto file = parse_trace(read_file(trace_path));
    trace = std::move(file.trace);
    seed = file.seed;
  } else {
    trace = build_trace(cfg);
  }
  const auto report = verify_structure(trace, k);
  Json header = header_json(cfg);
  header["seed"] = seed;
  Json sources = Json::array();
  for (const auto& [label, spec] : trace.header.sources) sources.push_back(label + "=" + spec);
  header["sources"] = sources;
  emit(cfg, out, Json{{"header", header}, {"report", to_json(report)}}.dump(2) + "\n");
  for (const auto& item : report.items) {
    if (item.status == ItemStatus::Fail) return kExitCheckFailed;
  }
  return kExitOk;
}

int run_pi(const RunConfig& cfg, std::ostream& out, int k, bool text) {
  const TrianglePermutation pi(k);
  const auto order = canonical_enumeration(k);
  std::vector<std::string> names;
  for (const auto& idx : order) names.push_back(to_string(idx));
  const std::vector<std::string> moved = apply_pi(k, names);
  std::vector<std::string> before;
  for (const auto& idx : canonical_predecessor(k)) before.push_back(to_string(idx));
  if (text) {
    emit(cfg, out,
         "u:\n" + render_diagram(k, names) + "\npi(u):\n" + render_diagram(k, moved) + "\norder " +
             std::to_string(pi.order()) + ", " + std::to_string(pi.cycles().size()) + " cycles\n");
    return kExitOk;
  }
  Json mapping = Json::array();
  for (std::size_t p = 0; p < names.size(); ++p) {
    mapping.push_back(Json{{"position", names[p]}, {"receives", names[pi.from(p)]}});
  }
  Json element_orders = Json::array();
  for (std::size_t p = 1; p <= pi.size(); ++p) element_orders.push_back(pi.element_order(p));
  emit(cfg, out,
       Json{{"k", k},
            {"n", pi.size()},
            {"order", pi.order()},
            {"cycle_count", pi.cycles().size()},
            {"cycles", pi.cycles()},
            {"element_orders", element_orders},
            {"mapping", mapping},
            {"canonical_predecessor", before},
            {"diagram", render_diagram(k, names)},
            {"image_diagram", render_diagram(k, moved)}}
               .dump(2) +
           "\n");
  return kExitOk;
}

int run_synth(const RunConfig& cfg, std::ostream& out, const std::string& schedule_text,
              SynthesisOptions options) {
  if (schedule_text.empty()) throw InvalidArgument("synth needs --schedule");
  std::string text = schedule_text;
  if (!text.empty() && text[0] == '@') text = read_file(text.substr(1));
  const auto schedule = parse_schedule(text);
  options.tail_seed = cfg.seed;
  const auto result = synthesize(schedule, options);
  Json doc = to_json(result, cfg.seed);
  doc["schedule"] = to_json(schedule);
  const std::string failure = replay_check(schedule, result);
  doc["replay"] = failure.empty() ? Json("ok") : Json(failure);
  emit_file(cfg, out, "synthesis.json", doc.dump(2) + "\n");
  return failure.empty() ? kExitOk : kExitCheckFailed;
}

int run_export(const RunConfig& cfg, std::ostream& out, const std::string& trace_path) {
  std::vector<StaircasePoint> points;
  if (!trace_path.empty()) {
    points = staircase_points(parse_trace(read_file(trace_path)).trace);
  } else {
    if (!cfg.horizon) throw InvalidArgument("export from sources needs --horizon");
    points = staircase_points(require_tuple(cfg), *cfg.horizon);
  }
  emit_file(cfg, out, "staircase.csv", staircase_csv(points));
  return kExitOk;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
                  Json extra = Json::object()) {
  Json doc{{"error", message}, {"kind", kind}};
  for (auto& [key, value] : extra.items()) doc[key] = value;
  err << doc.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact irrationality measure functions and their order dynamics", "psiorder"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  Flags f;
  Options o;
  app.add_option("--config", f.config, "key = value settings file; flags override it");
  o.sources = app.add_option("--sources", f.sources, "source specs, optionally label=spec");
  o.t0 = app.add_option("--t0", f.t0, "trace start (clamped to the earliest admissible)");
  o.horizon = app.add_option("--horizon", f.horizon, "largest t considered");
  o.count = app.add_option("--count", f.count, "number of change moments / convergents");
  o.depth_limit = app.add_option("--depth-limit", f.depth_limit, "refinements before giving up a comparison");
  o.oracle_cap = app.add_option("--oracle-cap", f.oracle_cap, "largest t for brute-force checks");
  o.max_events = app.add_option("--max-events", f.max_events, "events examined by a trace");
  o.output = app.add_option("--out", f.output, "output file");
  o.output_dir = app.add_option("--out-dir", f.output_dir, "output directory (default $PSIORDER_OUT_DIR)");
  o.seed = app.add_option("--seed", f.seed, "seed recorded in outputs and used for synthesized tails");

  auto* expand = app.add_subcommand("expand", "convergent table of each source")->fallthrough();
  auto* psi = app.add_subcommand("psi", "staircase values")->fallthrough();
  std::vector<std::string> ts;
  bool left = false, oracle = false;
  int digits = 30;
  psi->add_option("--t", ts, "evaluation points")->required();
  psi->add_flag("--left", left, "value just before the jump at t");
  psi->add_option("--digits", digits, "decimal digits");
  psi->add_flag("--oracle", oracle, "also evaluate by brute force");

  auto* trace = app.add_subcommand("trace", "moments of permutation change")->fallthrough();

  auto* verify = app.add_subcommand("verify", "finite-horizon structure check")->fallthrough();
  int verify_k = 0;
  std::string trace_path;
  verify->add_option("--k", verify_k, "number of recurring order vectors")->required();
  verify->add_option("--trace", trace_path, "trace file; built from --sources when absent");

  auto* pi = app.add_subcommand("pi", "the triangular permutation")->fallthrough();
  int pi_k = 0;
  bool pi_text = false;
  pi->add_option("--k", pi_k, "size of the diagram")->required();
  pi->add_flag("--text", pi_text, "plain-text diagrams instead of JSON");

  auto* synth = app.add_subcommand("synth", "construct numbers realizing a jump schedule")->fallthrough();
  std::string schedule_text;
  SynthesisOptions synth_options;
  synth->add_option("--schedule", schedule_text,
                    "extremal:k=<k>:cycles=<c>, triple, JSON, or @file")
      ->required();
  synth->add_option("--search-bound", synth_options.search_bound, "candidates examined in total");
  synth->add_option("--branch-limit", synth_options.branch_limit, "candidates per event");
  synth->add_option("--tail-length", synth_options.tail_length, "padding terms after the schedule");
  synth->add_option("--tail-bound", synth_options.tail_bound, "largest padding term");

  auto* exporter = app.add_subcommand("export", "staircase points as CSV")->fallthrough();
  std::string export_trace;
  exporter->add_option("--trace", export_trace, "trace file; else --sources with --horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return kExitUsage;
  }

  try {
    const RunConfig cfg = build_config(f, o);
    if (*expand) return run_expand(cfg, out);
    if (*psi) return run_psi(cfg, out, ts, left, digits, oracle);
    if (*trace) return run_trace(cfg, out);
    if (*verify) return run_verify(cfg, out, verify_k, trace_path);
    if (*pi) return run_pi(cfg, out, pi_k, pi_text);
    if (*synth) return run_synth(cfg, out, schedule_text, synth_options);
    if (*exporter) return run_export(cfg, out, export_trace);
    return kExitUsage;
  } catch (const ComparisonUndecided& e) {
    report_error(err, e.kind(), e.what(), Json{{"first", e.first()}, {"second", e.second()}, {"depth", e.depth()}});
    return kExitUndecided;
  } catch (const SourceExhausted& e) {
    report_error(err, e.kind(), e.what());
    return kExitExhausted;
  } catch (const InfeasibleSchedule& e) {
    report_error(err, e.kind(), e.what());
    return kExitExhausted;
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    report_error(err, "IOError", e.what());
    return kExitCheckFailed;
  }
}

}  // namespace psiorder
