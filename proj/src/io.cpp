#include "psiorder/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "psiorder/errors.hpp"

namespace psiorder {

namespace fs = std::filesystem;

std::string tool_version() { return PSIORDER_VERSION; }

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_unsigned(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing");
    return static_cast<T>(v);
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "' expects a non-negative integer, got '" + value + "'");
  }
}

std::vector<std::string> split_ws(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string word; in >> word;) out.push_back(word);
  return out;
}

Json bigint_json(const BigInt& x) { return to_string(x); }

BigInt bigint_from(const Json& j) {
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  throw ParseError("expected an integer encoded as a decimal string");
}

std::vector<Label> labels_from(const Json& j) {
  std::vector<Label> out;
  for (const auto& x : j) out.push_back(x.get<std::string>());
  return out;
}

Json vectors_json(const std::vector<OrderVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v.labels);
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (count < 1) throw InvalidArgument("count must be positive");
  if (depth_limit < 1) throw InvalidArgument("depth limit must be positive");
  if (oracle_cap < 1) throw InvalidArgument("oracle cap must be positive");
  if (max_events < 1) throw InvalidArgument("max events must be positive");
  if (t0 && *t0 < 1) throw InvalidArgument("t0 must be positive");
  if (horizon && *horizon < 1) throw InvalidArgument("horizon must be positive");
  for (const auto& s : sources) {
    const auto eq = s.find('=');
    PartialQuotientSource::parse(eq == std::string::npos ? s : s.substr(eq + 1));
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key == "sources") {
      base.sources = split_ws(value);
    } else if (key == "t0") {
      base.t0 = parse_bigint(value);
    } else if (key == "horizon") {
      base.horizon = parse_bigint(value);
    } else if (key == "count") {
      base.count = parse_unsigned<std::size_t>(key, value);
    } else if (key == "depth_limit") {
      base.depth_limit = parse_unsigned<int>(key, value);
    } else if (key == "oracle_cap") {
      base.oracle_cap = parse_unsigned<long>(key, value);
    } else if (key == "max_events") {
      base.max_events = parse_unsigned<std::size_t>(key, value);
    } else if (key == "output") {
      base.output = value;
    } else if (key == "output_dir") {
      base.output_dir = value;
    } else if (key == "seed") {
      base.seed = parse_unsigned<std::uint64_t>(key, value);
    } else {
      throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return base;
}

RunConfig load_config(const fs::path& path, RunConfig base) {
  return parse_config(read_file(path), std::move(base));
}

fs::path default_output_dir() {
  const char* env = std::getenv("PSIORDER_OUT_DIR");
  return env && *env ? fs::path(env) : fs::path(".");
}

fs::path resolve_output(const RunConfig& config, const std::string& default_name) {
  if (!config.output.empty()) {
    const fs::path p(config.output);
    if (p.is_absolute() || config.output_dir.empty()) return p;
    return fs::path(config.output_dir) / p;
  }
  const fs::path dir = config.output_dir.empty() ? default_output_dir() : fs::path(config.output_dir);
  return dir / default_name;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json to_json(const TraceFile& file) {
  const auto& h = file.trace.header;
  Json sources = Json::array();
  for (const auto& [label, spec] : h.sources) sources.push_back(Json{{"label", label}, {"spec", spec}});
  Json header{{"tool", "psiorder"},
              {"version", file.tool_version},
              {"seed", file.seed},
              {"generator", std::string(kSeededGenerator)},
              {"sources", sources},
              {"t0_requested", bigint_json(h.t0_requested)},
              {"t0", bigint_json(h.t0)},
              {"count", h.count},
              {"depth_limit", h.depth_limit},
              {"max_events", h.max_events},
              {"horizon", h.horizon ? Json(to_string(*h.horizon)) : Json(nullptr)},
              {"events_processed", h.events_processed},
              {"stop_reason", h.stop_reason}};
  Json entries = Json::array();
  for (const auto& e : file.trace.entries) {
    Json quiet = Json::array();
    for (const auto& q : e.quiet) quiet.push_back(Json{{"t", bigint_json(q.t)}, {"jumping", q.jumping}});
    entries.push_back(Json{{"t", bigint_json(e.t)},
                           {"v", e.order.labels},
                           {"jumping", e.jumping},
                           {"quiet", quiet}});
  }
  return Json{{"header", header}, {"entries", entries}};
}

TraceFile trace_file_from_json(const Json& doc) {
  try {
    TraceFile file;
    const auto& h = doc.at("header");
    if (h.at("tool").get<std::string>() != "psiorder") throw ParseError("not a psiorder trace");
    file.tool_version = h.at("version").get<std::string>();
    file.seed = h.at("seed").get<std::uint64_t>();
    auto& th = file.trace.header;
    for (const auto& s : h.at("sources")) {
      th.sources.emplace_back(s.at("label").get<std::string>(), s.at("spec").get<std::string>());
    }
    th.t0_requested = bigint_from(h.at("t0_requested"));
    th.t0 = bigint_from(h.at("t0"));
    th.count = h.at("count").get<std::size_t>();
    th.depth_limit = h.at("depth_limit").get<int>();
    th.max_events = h.at("max_events").get<std::size_t>();
    if (!h.at("horizon").is_null()) th.horizon = bigint_from(h.at("horizon"));
    th.events_processed = h.at("events_processed").get<std::size_t>();
    th.stop_reason = h.at("stop_reason").get<std::string>();
    for (const auto& e : doc.at("entries")) {
      TraceEntry entry;
      entry.t = bigint_from(e.at("t"));
      entry.order.labels = labels_from(e.at("v"));
      entry.jumping = labels_from(e.at("jumping"));
      if (e.contains("quiet")) {
        for (const auto& q : e.at("quiet")) {
          entry.quiet.push_back(JumpEvent{bigint_from(q.at("t")), labels_from(q.at("jumping"))});
        }
      }
      file.trace.entries.push_back(std::move(entry));
    }
    return file;
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("malformed trace file: ") + err.what());
  }
}

std::string emit_trace(const TraceFile& file) { return to_json(file).dump(2) + "\n"; }

TraceFile parse_trace(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("trace file is not JSON: ") + err.what());
  }
  return trace_file_from_json(doc);
}

Json to_json(const VerificationReport& report) {
  Json enumeration = Json::array();
  for (const auto& [idx, label] : report.enumeration) {
    enumeration.push_back(Json{{"position", to_string(idx)}, {"label", label}});
  }
  Json items = Json::object();
  for (std::size_t i = 0; i < report.items.size(); ++i) {
    const auto& item = report.items[i];
    Json j{{"status", to_string(item.status)}, {"note", item.note}};
    if (item.witness) {
      j["witness"] = Json{{"t", to_string(item.witness->t)},
                          {"index", item.witness->index},
                          {"vectors", vectors_json(item.witness->vectors)},
                          {"detail", item.witness->detail}};
    }
    items[kItemNames[i]] = j;
  }
  return Json{{"k", report.k},
              {"n", report.n},
              {"horizon", to_string(report.horizon)},
              {"trace_length", report.trace_length},
              {"offset", report.offset},
              {"enumeration", enumeration},
              {"items", items},
              {"distinct_vectors", report.distinct_vectors},
              {"consistent", report.consistent()},
              {"all_pass", report.all_pass()},
              {"warnings", report.warnings}};
}

Json to_json(const BeforeJumpResult& result) {
  Json violations = Json::array();
  for (const auto& v : result.violations) {
    violations.push_back(Json{{"alpha", v.roles.first},
                              {"beta", v.roles.second},
                              {"jump", to_string(v.jump)},
                              {"previous", to_string(v.previous)}});
  }
  return Json{{"status", to_string(result.status)},
              {"instances", result.instances},
              {"premise_held", result.premise_held},
              {"violations", violations},
              {"reason", result.reason}};
}

Json to_json(const JumpSchedule& schedule) {
  Json prefixes = Json::object();
  for (const auto& [label, terms] : schedule.prefixes) {
    Json t = Json::array();
    for (const auto& a : terms) t.push_back(to_string(a));
    prefixes[label] = t;
  }
  return Json{{"k", schedule.k},
              {"labels", schedule.labels},
              {"events", schedule.events},
              {"prefixes", prefixes}};
}

Json to_json(const SynthesisResult& result, std::uint64_t seed) {
  Json sources = Json::array();
  for (std::size_t i = 0; i < result.labels.size(); ++i) {
    sources.push_back(Json{{"label", result.labels[i]},
                           {"spec", result.sources[i].spec()},
                           {"scheduled_terms", result.scheduled_terms[i]}});
  }
  Json events = Json::array();
  for (std::size_t e = 0; e < result.denominators.size(); ++e) {
    Json certs = Json::array();
    for (const auto& c : result.certificates[e]) {
      certs.push_back(Json{{"label", c.label},
                           {"index", c.index},
                           {"quotient", to_string(c.quotient)},
                           {"q", to_string(c.q)},
                           {"q_prev", to_string(c.q_prev)}});
    }
    events.push_back(Json{{"t", to_string(result.denominators[e])}, {"certificates", certs}});
  }
  return Json{{"header", Json{{"tool", "psiorder"},
                              {"version", tool_version()},
                              {"seed", seed},
                              {"generator", std::string(kSeededGenerator)},
                              {"candidates_tried", result.candidates_tried}}},
              {"sources", sources},
              {"events", events}};
}

JumpSchedule parse_schedule(std::string_view text) {
  const std::string s = trim(text);
  if (s.rfind("extremal:", 0) == 0) {
    int k = 0, cycles = 0;
    std::istringstream in(s.substr(9));
    for (std::string part; std::getline(in, part, ':');) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw ParseError("bad schedule preset '" + s + "'");
      const std::string key = part.substr(0, eq);
      const int value = parse_unsigned<int>(key, part.substr(eq + 1));
      if (key == "k") {
        k = value;
      } else if (key == "cycles") {
        cycles = value;
      } else {
        throw ParseError("unknown schedule parameter '" + key + "'");
      }
    }
    return extremal_schedule(k, cycles == 0 ? 1 : cycles);
  }
  if (s == "triple") return coincidence_schedule();
  try {
    const Json doc = Json::parse(s);
    JumpSchedule schedule;
    schedule.k = doc.value("k", 0);
    for (const auto& ev : doc.at("events")) schedule.events.push_back(labels_from(ev));
    if (doc.contains("labels")) {
      schedule.labels = labels_from(doc.at("labels"));
    } else {
      for (const auto& ev : schedule.events) {
        for (const auto& label : ev) {
          if (std::find(schedule.labels.begin(), schedule.labels.end(), label) == schedule.labels.end()) {
            schedule.labels.push_back(label);
          }
        }
      }
    }
    if (doc.contains("prefixes")) {
      for (const auto& [label, terms] : doc.at("prefixes").items()) {
        std::vector<BigInt> prefix;
        for (const auto& a : terms) prefix.push_back(bigint_from(a));
        schedule.prefixes[label] = std::move(prefix);
      }
    }
    schedule.validate();
    return schedule;
  } catch (const nlohmann::json::exception& err) {
    throw ParseError(std::string("schedule must be a preset or JSON: ") + err.what());
  }
}

std::vector<StaircasePoint> staircase_points(const FunctionTuple& tuple, const BigInt& horizon,
                                             int digits) {
  if (horizon < 1) throw InvalidArgument("horizon must be positive");
  const Rational width = pow10_inverse(static_cast<unsigned>(digits));
  std::vector<StaircasePoint> points;
  for (const auto& member : tuple.members) {
    PsiFunction f(member.label, member.source);
    auto& table = f.convergents();
    auto push = [&](const BigInt& t, bool jump, std::size_t m) {
      auto level = f.level(m);
      f.refine_to(level, width);
      points.push_back({member.label, t, jump, m, to_decimal(level.value.lo, digits, false),
                        to_decimal(level.value.hi, digits, true)});
    };
    std::size_t m = table.q(1) == 1 ? 1 : 0;
    while (true) {
      const BigInt t = table.q(m);
      push(t, true, m);
      // q_{m+1} needs a_{m+1}; the level value already requires it.
      const BigInt next = table.q(m + 1);
      if (next > horizon) {
        if (horizon > t) push(t + 1, false, m);
        break;
      }
      if (next - t >= 2) push(t + 1, false, m);
      ++m;
    }
  }
  return points;
}

std::vector<StaircasePoint> staircase_points(const ChangeTrace& trace, int digits) {
  if (trace.entries.empty()) return {};
  std::vector<FunctionTuple::Member> members;
  for (const auto& [label, spec] : trace.header.sources) {
    members.push_back({label, PartialQuotientSource::parse(spec)});
  }
  return staircase_points(FunctionTuple(std::move(members)), trace.entries.back().t, digits);
}

std::string staircase_csv(const std::vector<StaircasePoint>& points) {
  std::string out = "label,t,kind,level,lo,hi\n";
  for (const auto& p : points) {
    if (p.label.find_first_of(",\"\n\r") != std::string::npos) {
      throw InvalidArgument("label '" + p.label + "' cannot be written to CSV");
    }
    out += p.label + "," + to_string(p.t) + "," + (p.jump ? "jump" : "sample") + "," +
           std::to_string(p.level) + "," + p.lo + "," + p.hi + "\n";
  }
  return out;
}

std::vector<StaircasePoint> parse_staircase_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || trim(line) != "label,t,kind,level,lo,hi") {
    throw ParseError("staircase CSV is missing its header row");
  }
  std::vector<StaircasePoint> points;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(trim(line));
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    if (cells.size() != 6) throw ParseError("staircase CSV row has " + std::to_string(cells.size()) + " cells");
    if (cells[2] != "jump" && cells[2] != "sample") throw ParseError("unknown row kind '" + cells[2] + "'");
    points.push_back({cells[0], parse_bigint(cells[1]), cells[2] == "jump",
                      parse_unsigned<std::size_t>("level", cells[3]), cells[4], cells[5]});
  }
  return points;
}

std::size_t step_count(const std::vector<StaircasePoint>& points, const Label& label) {
  std::size_t n = 0;
  for (const auto& p : points) n += p.label == label && p.jump;
  return n;
}

}  // namespace psiorder
