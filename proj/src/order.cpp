#include "psiorder/order.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "psiorder/errors.hpp"

namespace psiorder {

FunctionTuple::FunctionTuple(std::vector<Member> m) : members(std::move(m)) {
  std::set<Label> seen;
  for (const auto& member : members) {
    if (!seen.insert(member.label).second) {
      throw InvalidArgument("duplicate label '" + member.label + "' in tuple");
    }
  }
}

FunctionTuple FunctionTuple::from_specs(const std::vector<std::string>& specs) {
  std::vector<Member> members;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    auto eq = s.find('=');
    if (eq != std::string::npos && s.find(':') > eq) {
      members.push_back({s.substr(0, eq), PartialQuotientSource::parse(s.substr(eq + 1))});
    } else {
      members.push_back({std::to_string(i + 1), PartialQuotientSource::parse(s)});
    }
  }
  return FunctionTuple(std::move(members));
}

std::vector<Label> FunctionTuple::labels() const {
  std::vector<Label> out;
  for (const auto& m : members) out.push_back(m.label);
  return out;
}

namespace {

// Walks the merged jump events of a tuple, keeping each member's current
// staircase level and its refinable value bracket.
class Tracker {
 public:
  Tracker(const FunctionTuple& tuple, int depth_limit) : depth_limit_(depth_limit) {
    for (const auto& m : tuple.members) functions_.emplace_back(m.label, m.source);
    levels_.resize(functions_.size());
    values_.resize(functions_.size());
  }

  void start_at(const BigInt& t) {
    for (std::size_t i = 0; i < functions_.size(); ++i) {
      levels_[i] = functions_[i].level_at(t);
      values_[i].reset();
    }
  }

  // Next event strictly after the current levels. Advances jumping members.
  // Returns nullopt if some member's next denominator is unavailable.
  std::optional<std::pair<BigInt, std::vector<std::size_t>>> advance() {
    std::optional<BigInt> next;
    for (std::size_t i = 0; i < functions_.size(); ++i) {
      auto& table = functions_[i].convergents();
      if (!table.try_ensure(levels_[i] + 1)) return std::nullopt;
      const BigInt& q = table.q(levels_[i] + 1);
      if (!next || q < *next) next = q;
    }
    std::vector<std::size_t> jumping;
    for (std::size_t i = 0; i < functions_.size(); ++i) {
      if (functions_[i].convergents().q(levels_[i] + 1) == *next) {
        ++levels_[i];
        values_[i].reset();
        jumping.push_back(i);
      }
    }
    return std::make_pair(*next, std::move(jumping));
  }

  // psi_i > psi_j at the current levels.
  bool greater(std::size_t i, std::size_t j) {
    auto v = compare_levels(functions_[i], value(i), functions_[j], value(j), depth_limit_);
    return v.order == Ordering::Greater;
  }

  // Insertion sort from a previous order: cheap when few members moved.
  std::vector<std::size_t> sort(std::vector<std::size_t> order) {
    for (std::size_t a = 1; a < order.size(); ++a) {
      for (std::size_t b = a; b > 0 && greater(order[b], order[b - 1]); --b) {
        std::swap(order[b], order[b - 1]);
      }
    }
    for (std::size_t a = 1; a < order.size(); ++a) {
      if (!greater(order[a - 1], order[a])) {
        throw InvalidArgument("order vector failed adjacent certification");
      }
    }
    return order;
  }

  OrderVector labels_of(const std::vector<std::size_t>& order) const {
    OrderVector v;
    for (auto i : order) v.labels.push_back(functions_[i].label());
    return v;
  }
  std::vector<Label> names(const std::vector<std::size_t>& idx) const {
    std::vector<Label> out;
    for (auto i : idx) out.push_back(functions_[i].label());
    return out;
  }

  std::vector<std::size_t> jumping_at(const BigInt& t) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < functions_.size(); ++i) {
      if (functions_[i].convergents().q(levels_[i]) == t) out.push_back(i);
    }
    return out;
  }

  std::size_t size() const { return functions_.size(); }

 private:
  ApproximationError& value(std::size_t i) {
    if (!values_[i]) values_[i] = functions_[i].level(levels_[i]);
    return *values_[i];
  }

  int depth_limit_;
  std::vector<PsiFunction> functions_;
  std::vector<std::size_t> levels_;
  std::vector<std::optional<ApproximationError>> values_;
};

std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

std::vector<JumpEvent> build_events(const FunctionTuple& tuple, const BigInt& horizon) {
  std::map<BigInt, std::vector<std::size_t>> merged;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    ConvergentTable table(tuple.members[i].source);
    for (std::size_t m = 0;; ++m) {
      const BigInt& q = table.q(m);
      if (q > horizon) break;
      auto& slot = merged[q];
      if (slot.empty() || slot.back() != i) slot.push_back(i);
    }
  }
  std::vector<JumpEvent> events;
  for (auto& [t, idx] : merged) {
    JumpEvent e{t, {}};
    for (auto i : idx) e.jumping.push_back(tuple.members[i].label);
    events.push_back(std::move(e));
  }
  return events;
}

OrderVector order_vector_at(const FunctionTuple& tuple, const BigInt& t, int depth_limit) {
  Tracker tracker(tuple, depth_limit);
  tracker.start_at(t);
  return tracker.labels_of(tracker.sort(identity_order(tuple.size())));
}

BigInt earliest_start(const FunctionTuple& tuple) {
  BigInt start(1);
  for (const auto& m : tuple.members) {
    ConvergentTable table(m.source);
    if (table.q(2) > start) start = table.q(2);
  }
  return start;
}

ChangeTrace change_trace(const FunctionTuple& tuple, const BigInt& t0, std::size_t count,
                         const TraceOptions& options) {
  if (tuple.size() == 0) throw InvalidArgument("change_trace needs a nonempty tuple");
  ChangeTrace trace;
  auto& h = trace.header;
  for (const auto& m : tuple.members) h.sources.emplace_back(m.label, m.source.spec());
  h.t0_requested = t0;
  h.t0 = std::max(t0, earliest_start(tuple));
  h.count = count;
  h.depth_limit = options.depth_limit;
  h.max_events = options.max_events;
  h.horizon = options.horizon;

  Tracker tracker(tuple, options.depth_limit);
  tracker.start_at(h.t0);
  auto order = tracker.sort(identity_order(tuple.size()));
  trace.entries.push_back(
      {h.t0, tracker.labels_of(order), tracker.names(tracker.jumping_at(h.t0)), {}});

  std::vector<JumpEvent> quiet;
  h.stop_reason = "count";
  while (trace.moments() < count) {
    if (h.events_processed >= options.max_events) {
      h.stop_reason = "max_events";
      break;
    }
    try {
      auto event = tracker.advance();
      if (!event) throw SourceExhausted("a member's next convergent denominator is unavailable");
      auto& [t, jumping] = *event;
      if (options.horizon && t > *options.horizon) {
        h.stop_reason = "horizon";
        break;
      }
      ++h.events_processed;
      auto next = tracker.sort(order);
      if (next != order) {
        trace.entries.push_back({t, tracker.labels_of(next), tracker.names(jumping), std::move(quiet)});
        quiet.clear();
        order = std::move(next);
      } else {
        quiet.push_back({t, tracker.names(jumping)});
      }
    } catch (const SourceExhausted&) {
      if (!options.stop_on_exhaustion) throw;
      h.stop_reason = "source_exhausted";
      break;
    }
  }
  return trace;
}

std::size_t tau_at(const FunctionTuple& tuple, const BigInt& t) {
  std::size_t n = 0;
  for (const auto& m : tuple.members) {
    ConvergentTable table(m.source);
    if (table.index_of_denominator(t)) ++n;
  }
  return n;
}

std::vector<std::pair<OrderVector, std::size_t>> distinct_vectors(const ChangeTrace& trace) {
  std::vector<std::pair<OrderVector, std::size_t>> out;
  for (const auto& e : trace.entries) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == e.order; });
    if (it == out.end()) {
      out.emplace_back(e.order, 1);
    } else {
      ++it->second;
    }
  }
  return out;
}

}  // namespace psiorder
