#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psiorder/cf.hpp"
#include "psiorder/psi.hpp"

namespace psiorder {

using Label = std::string;

struct FunctionTuple {
  struct Member {
    Label label;
    PartialQuotientSource source;
  };
  std::vector<Member> members;

  FunctionTuple() = default;
  explicit FunctionTuple(std::vector<Member> members);  // throws on duplicate labels

  // Each spec is "label=source-spec" or a bare source spec labelled by its
  // 1-based position.
  static FunctionTuple from_specs(const std::vector<std::string>& specs);

  std::size_t size() const { return members.size(); }
  std::vector<Label> labels() const;
};

struct JumpEvent {
  BigInt t;
  std::vector<Label> jumping;  // members with q_m == t, in tuple order

  friend bool operator==(const JumpEvent&, const JumpEvent&) = default;
};

/// Labels by strictly decreasing psi value: psi_{v_1}(t) > ... > psi_{v_n}(t).
struct OrderVector {
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }
  friend bool operator==(const OrderVector&, const OrderVector&) = default;
  friend auto operator<=>(const OrderVector&, const OrderVector&) = default;
};

struct TraceEntry {
  BigInt t;
  OrderVector order;
  std::vector<Label> jumping;     // members jumping exactly at t
  std::vector<JumpEvent> quiet;   // jumps after the previous entry that left the order intact

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct TraceHeader {
  std::vector<std::pair<Label, std::string>> sources;  // (label, source spec)
  BigInt t0_requested;
  BigInt t0;  // after clamping to max q_2
  std::size_t count = 0;
  int depth_limit = kDefaultDepthLimit;
  std::size_t max_events = 0;
  std::optional<BigInt> horizon;
  std::size_t events_processed = 0;
  std::string stop_reason;  // "count", "horizon", "max_events", "source_exhausted"

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

/// Moments of permutation change. entries[0] is t_0; entries[i] is t_i, the
/// first event after t_{i-1} whose order vector differs from v(t_{i-1}).
struct ChangeTrace {
  TraceHeader header;
  std::vector<TraceEntry> entries;

  std::size_t moments() const { return entries.empty() ? 0 : entries.size() - 1; }
  friend bool operator==(const ChangeTrace&, const ChangeTrace&) = default;
};

struct TraceOptions {
  int depth_limit = kDefaultDepthLimit;
  std::size_t max_events = 100000;  // events examined after t_0
  std::optional<BigInt> horizon;    // ignore events beyond this t
  bool stop_on_exhaustion = false;  // end the trace instead of throwing SourceExhausted
};

// Sorted, merged jump events with t <= horizon. Coinciding denominators of
// different members share one event.
std::vector<JumpEvent> build_events(const FunctionTuple& tuple, const BigInt& horizon);

OrderVector order_vector_at(const FunctionTuple& tuple, const BigInt& t,
                            int depth_limit = kDefaultDepthLimit);

// max over members of q_2: the earliest admissible trace start.
BigInt earliest_start(const FunctionTuple& tuple);

ChangeTrace change_trace(const FunctionTuple& tuple, const BigInt& t0, std::size_t count,
                         const TraceOptions& options = {});

// Number of members whose psi jumps at t.
std::size_t tau_at(const FunctionTuple& tuple, const BigInt& t);

// Distinct order vectors with multiplicities, in order of first appearance.
// The count is a lower bound for the number of vectors recurring forever.
std::vector<std::pair<OrderVector, std::size_t>> distinct_vectors(const ChangeTrace& trace);

}  // namespace psiorder
