#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psiorder/cf.hpp"
#include "psiorder/order.hpp"
#include "psiorder/triangle.hpp"

namespace psiorder {

/// Which functions must share a convergent denominator at each event.
/// Events are realized at strictly increasing denominators Q_1 < Q_2 < ...
/// and no function has a denominator strictly between its scheduled ones.
struct JumpSchedule {
  int k = 0;  // nonzero for the extremal preset
  std::vector<Label> labels;
  std::vector<std::vector<Label>> events;
  // Optional starting terms [a_0, a_1, ...] per label; default [0, 1].
  std::map<Label, std::vector<BigInt>> prefixes;

  void validate() const;  // throws InvalidArgument
};

// Label used for the function in role (i, j) of the triangular enumeration.
Label role_label(const TriangularIndex& idx);  // "psi_i_j"

// Event e (1-based) carries psi_{r,r} and every psi_{i,j}, i < j, with
// i = r or j = r, where r = e mod k in 1..k. Labels in canonical order.
JumpSchedule extremal_schedule(int k, int cycles);

// Three functions alpha, beta, gamma sharing denominators as
// q_m=h_s, q_{m+1}=r_l, r_{l+1}=h_{s+1}, q_{m+2}=h_{s+2}, q_{m+3}=r_{l+2}, r_{l+3}=h_{s+3}.
JumpSchedule coincidence_schedule();

struct Congruence {
  BigInt residue;  // 0 <= residue < modulus
  BigInt modulus;  // >= 1
};

// Combined residue system via extended gcd; nullopt when the residues conflict.
std::optional<Congruence> merge_congruences(const Congruence& a, const Congruence& b);
std::optional<Congruence> solve_congruences(const std::vector<Congruence>& system);

// Q = quotient * q + q_prev makes Q the denominator q_index of `label`.
struct CongruenceCertificate {
  Label label;
  std::size_t index = 0;
  BigInt quotient;
  BigInt q;
  BigInt q_prev;
};

struct SynthesisResult {
  std::vector<Label> labels;
  std::vector<PartialQuotientSource> sources;  // explicit, padded with a tail
  std::vector<std::size_t> scheduled_terms;    // terms before the tail padding
  std::vector<BigInt> denominators;            // Q_e per event
  std::vector<std::vector<CongruenceCertificate>> certificates;
  std::size_t candidates_tried = 0;

  FunctionTuple tuple() const;
};

struct SynthesisOptions {
  std::size_t search_bound = 1000000;  // total candidate denominators examined
  std::size_t branch_limit = 8;        // candidates per event before backtracking
  std::size_t tail_length = 80;        // padding terms after the schedule
  std::uint64_t tail_seed = 0;
  std::uint64_t tail_bound = 4;
};

// Throws InfeasibleSchedule when no assignment is found within the bound.
SynthesisResult synthesize(const JumpSchedule& schedule, const SynthesisOptions& options = {});

// Recomputes every denominator from the emitted quotients and checks each
// scheduled coincidence, and that no extra denominator falls inside the
// scheduled range. Returns an empty string on success, else a description.
std::string replay_check(const JumpSchedule& schedule, const SynthesisResult& result);

}  // namespace psiorder
