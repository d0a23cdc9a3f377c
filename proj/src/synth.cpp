#include "psiorder/synth.hpp"

#include <algorithm>
#include <set>

#include "psiorder/errors.hpp"

namespace psiorder {

void JumpSchedule::validate() const {
  std::set<Label> known(labels.begin(), labels.end());
  if (known.size() != labels.size()) throw InvalidArgument("schedule labels must be distinct");
  std::set<Label> used;
  for (std::size_t e = 0; e < events.size(); ++e) {
    if (events[e].empty()) throw InvalidArgument("schedule event " + std::to_string(e + 1) + " is empty");
    std::set<Label> in_event;
    for (const auto& label : events[e]) {
      if (!known.count(label)) throw InvalidArgument("schedule event uses unknown label '" + label + "'");
      if (!in_event.insert(label).second) {
        throw InvalidArgument("label '" + label + "' repeated within event " + std::to_string(e + 1));
      }
      used.insert(label);
    }
  }
  for (const auto& label : labels) {
    if (!used.count(label)) throw InvalidArgument("label '" + label + "' never jumps in the schedule");
  }
  for (const auto& [label, prefix] : prefixes) {
    if (!known.count(label)) throw InvalidArgument("prefix given for unknown label '" + label + "'");
    if (prefix.size() < 2) throw InvalidArgument("prefix for '" + label + "' needs at least a_0 and a_1");
    for (std::size_t i = 1; i < prefix.size(); ++i) {
      if (prefix[i] < 1) throw InvalidArgument("prefix for '" + label + "' has a partial quotient < 1");
    }
  }
}

Label role_label(const TriangularIndex& idx) {
  return "psi_" + std::to_string(idx.j) + "_" + std::to_string(idx.l);
}

JumpSchedule extremal_schedule(int k, int cycles) {
  if (k < 2) throw InvalidArgument("extremal schedule needs k >= 2");
  if (cycles < 1) throw InvalidArgument("extremal schedule needs cycles >= 1");
  JumpSchedule s;
  s.k = k;
  const auto order = canonical_enumeration(k);
  for (const auto& idx : order) s.labels.push_back(role_label(idx));
  for (int e = 1; e <= k * cycles; ++e) {
    const int r = (e - 1) % k + 1;
    std::vector<Label> event;
    for (const auto& idx : order) {
      if (idx.j == r || idx.l == r) event.push_back(role_label(idx));
    }
    s.events.push_back(std::move(event));
  }
  return s;
}

JumpSchedule coincidence_schedule() {
  JumpSchedule s;
  s.labels = {"alpha", "beta", "gamma"};
  s.events = {{"alpha", "beta"}, {"alpha", "gamma"}, {"beta", "gamma"},
              {"alpha", "beta"}, {"alpha", "gamma"}, {"beta", "gamma"}};
  return s;
}

namespace {

// Returns (g, x, y) with a x + b y = g = gcd(a, b).
void extended_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& x, BigInt& y) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    BigInt quotient;
    mpz_fdiv_q(quotient.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
    BigInt tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quotient * t;
    old_t = t;
    t = tmp;
  }
  g = old_r;
  x = old_s;
  y = old_t;
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

struct FunctionState {
  std::vector<BigInt> terms;
  std::vector<BigInt> q;  // q_0 .. q_index
};

FunctionState start_state(const std::vector<BigInt>& prefix) {
  FunctionState st;
  auto conv = ConvergentState::initial(prefix[0]);
  st.terms.push_back(prefix[0]);
  st.q.push_back(conv.q);
  for (std::size_t i = 1; i < prefix.size(); ++i) {
    conv = next_convergent(conv, prefix[i]);
    st.terms.push_back(prefix[i]);
    st.q.push_back(conv.q);
  }
  return st;
}

class Search {
 public:
  Search(const JumpSchedule& schedule, const SynthesisOptions& options)
      : schedule_(schedule), options_(options) {
    for (const auto& label : schedule.labels) {
      auto it = schedule.prefixes.find(label);
      std::vector<BigInt> prefix = it != schedule.prefixes.end() ? it->second
                                                                  : std::vector<BigInt>{BigInt(0), BigInt(1)};
      index_[label] = states_.size();
      states_.push_back(start_state(prefix));
      floor_ = std::max(floor_, states_.back().q.back());
    }
    for (const auto& event : schedule.events) {
      std::vector<std::size_t> idx;
      for (const auto& label : event) idx.push_back(index_.at(label));
      events_.push_back(std::move(idx));
    }
  }

  bool run() { return step(0, floor_); }

  const std::vector<FunctionState>& states() const { return states_; }
  const std::vector<BigInt>& denominators() const { return chosen_; }
  std::size_t tried() const { return tried_; }
  std::string failure() const {
    return "no shared denominator for event " + std::to_string(deepest_ + 1) + " (" + reason_ + ")";
  }

 private:
  bool step(std::size_t e, const BigInt& lower) {
    if (e == events_.size()) return true;
    std::vector<Congruence> system;
    for (auto f : events_[e]) {
      const auto& q = states_[f].q;
      const BigInt& modulus = q.back();
      const BigInt prev = q.size() >= 2 ? q[q.size() - 2] : BigInt(0);
      system.push_back({mod(prev, modulus), modulus});
    }
    auto solved = solve_congruences(system);
    if (!solved) {
      note_failure(e, "conflicting residues");
      return false;
    }
    // Smallest solution strictly above `lower`.
    BigInt first = lower + 1 + mod(solved->residue - lower - 1, solved->modulus);
    for (std::size_t c = 0; c < options_.branch_limit; ++c) {
      if (++tried_ > options_.search_bound) {
        throw InfeasibleSchedule("search bound " + std::to_string(options_.search_bound) +
                                 " exhausted; " + failure());
      }
      BigInt Q = first + BigInt(static_cast<unsigned long>(c)) * solved->modulus;
      try {
        apply(e, Q);
      } catch (const QuotientUnderflow& err) {
        note_failure(e, err.what());
        continue;
      }
      chosen_.push_back(Q);
      if (step(e + 1, Q)) return true;
      chosen_.pop_back();
      undo(e);
    }
    note_failure(e, "all candidates led to dead ends");
    return false;
  }

  void apply(std::size_t e, const BigInt& Q) {
    std::vector<BigInt> quotients;
    for (auto f : events_[e]) {
      const auto& q = states_[f].q;
      const BigInt prev = q.size() >= 2 ? q[q.size() - 2] : BigInt(0);
      BigInt diff = Q - prev;
      if (mod(diff, q.back()) != 0) throw InvalidArgument("candidate violates its congruence");
      BigInt a = diff / q.back();
      if (a < 1) throw QuotientUnderflow("derived partial quotient " + to_string(a) + " < 1");
      quotients.push_back(std::move(a));
    }
    for (std::size_t i = 0; i < events_[e].size(); ++i) {
      auto& st = states_[events_[e][i]];
      st.terms.push_back(quotients[i]);
      st.q.push_back(Q);
    }
  }

  void undo(std::size_t e) {
    for (auto f : events_[e]) {
      states_[f].terms.pop_back();
      states_[f].q.pop_back();
    }
  }

  void note_failure(std::size_t e, std::string why) {
    if (e >= deepest_) {
      deepest_ = e;
      reason_ = std::move(why);
    }
  }

  const JumpSchedule& schedule_;
  const SynthesisOptions& options_;
  std::map<Label, std::size_t> index_;
  std::vector<FunctionState> states_;
  std::vector<std::vector<std::size_t>> events_;
  std::vector<BigInt> chosen_;
  BigInt floor_ = 1;
  std::size_t tried_ = 0;
  std::size_t deepest_ = 0;
  std::string reason_ = "none";
};

}  // namespace

std::optional<Congruence> merge_congruences(const Congruence& a, const Congruence& b) {
  if (a.modulus < 1 || b.modulus < 1) throw InvalidArgument("congruence modulus must be >= 1");
  BigInt g, x, y;
  extended_gcd(a.modulus, b.modulus, g, x, y);
  const BigInt diff = b.residue - a.residue;
  if (mod(diff, g) != 0) return std::nullopt;
  const BigInt step = b.modulus / g;
  const BigInt lcm = a.modulus * step;
  const BigInt t = mod(BigInt(diff / g) * x, step);
  return Congruence{mod(a.residue + a.modulus * t, lcm), lcm};
}

std::optional<Congruence> solve_congruences(const std::vector<Congruence>& system) {
  Congruence acc{BigInt(0), BigInt(1)};
  for (const auto& c : system) {
    auto merged = merge_congruences(acc, Congruence{mod(c.residue, c.modulus), c.modulus});
    if (!merged) return std::nullopt;
    acc = *merged;
  }
  return acc;
}

FunctionTuple SynthesisResult::tuple() const {
  std::vector<FunctionTuple::Member> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members.push_back({labels[i], sources[i]});
  return FunctionTuple(std::move(members));
}

SynthesisResult synthesize(const JumpSchedule& schedule, const SynthesisOptions& options) {
  schedule.validate();
  if (schedule.events.empty()) throw InvalidArgument("schedule has no events");
  if (options.search_bound < 1) throw InvalidArgument("search bound must be >= 1");
  Search search(schedule, options);
  if (!search.run()) throw InfeasibleSchedule(search.failure());

  SynthesisResult result;
  result.labels = schedule.labels;
  result.denominators = search.denominators();
  result.candidates_tried = search.tried();
  const auto& states = search.states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<BigInt> terms = states[i].terms;
    result.scheduled_terms.push_back(terms.size());
    auto tail = PartialQuotientSource::seeded(options.tail_seed * 0x100000001B3ULL + i + 1,
                                              std::max<std::uint64_t>(1, options.tail_bound));
    // The first padding term jumps past the last scheduled denominator.
    auto state = ConvergentState::initial(terms[0]);
    for (std::size_t m = 1; m < terms.size(); ++m) state = next_convergent(state, terms[m]);
    const BigInt& last = result.denominators.back();
    BigInt first = *tail.term(1);
    if (state.q <= last) first = std::max(first, BigInt((last - state.q_prev) / state.q + 1));
    terms.push_back(first);
    for (std::size_t j = 2; j <= options.tail_length; ++j) terms.push_back(*tail.term(j));
    result.sources.push_back(PartialQuotientSource::explicit_terms(std::move(terms)));
  }
  // Certificates from the final quotients.
  std::map<Label, std::size_t> index;
  for (std::size_t i = 0; i < result.labels.size(); ++i) index[result.labels[i]] = i;
  std::vector<ConvergentTable> tables;
  for (const auto& s : result.sources) tables.emplace_back(s);
  for (std::size_t e = 0; e < schedule.events.size(); ++e) {
    std::vector<CongruenceCertificate> certs;
    for (const auto& label : schedule.events[e]) {
      auto& table = tables[index.at(label)];
      auto m = table.index_of_denominator(result.denominators[e]);
      if (!m || *m == 0) throw InvalidArgument("synthesized denominator missing for " + label);
      certs.push_back({label, *m, table.a(*m), table.q(*m - 1), *m >= 2 ? table.q(*m - 2) : BigInt(0)});
    }
    result.certificates.push_back(std::move(certs));
  }
  return result;
}

std::string replay_check(const JumpSchedule& schedule, const SynthesisResult& result) {
  if (result.denominators.size() != schedule.events.size()) return "event count mismatch";
  if (result.denominators.empty()) return "";
  for (std::size_t e = 1; e < result.denominators.size(); ++e) {
    if (!(result.denominators[e - 1] < result.denominators[e])) {
      return "denominators not increasing at event " + std::to_string(e + 1);
    }
  }
  const BigInt& first = result.denominators.front();
  const BigInt& last = result.denominators.back();
  for (std::size_t i = 0; i < result.labels.size(); ++i) {
    const auto& label = result.labels[i];
    // Replay the recurrence from the emitted quotients.
    const auto& src = result.sources[i];
    auto state = ConvergentState::initial(src.require_term(0));
    std::set<BigInt> seen{state.q};
    const std::size_t available = src.length().value_or(result.scheduled_terms[i]);
    for (std::size_t m = 1; m < available && state.q <= last; ++m) {
      const auto sign = state.determinant();
      state = next_convergent(state, src.require_term(m));
      if (state.determinant() != -sign) return "determinant identity fails for " + label;
      seen.insert(state.q);
    }
    std::set<BigInt> expected;
    for (std::size_t e = 0; e < schedule.events.size(); ++e) {
      const auto& ev = schedule.events[e];
      if (std::find(ev.begin(), ev.end(), label) != ev.end()) expected.insert(result.denominators[e]);
    }
    std::set<BigInt> in_range;
    for (const auto& q : seen) {
      if (first <= q && q <= last) in_range.insert(q);
    }
    if (in_range != expected) {
      return "denominators of " + label + " inside the scheduled range differ from its events";
    }
  }
  return "";
}

}  // namespace psiorder
