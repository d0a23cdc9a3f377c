#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "psiorder/order.hpp"
#include "psiorder/triangle.hpp"

namespace psiorder {

// Labels of I in the order they occur in v. Throws UnknownLabel.
OrderVector project(const OrderVector& v, const std::vector<Label>& subcollection);

// Members of V whose projection onto I equals u.
std::vector<OrderVector> preimage(const OrderVector& u, const std::vector<OrderVector>& V,
                                  const std::vector<Label>& subcollection);

enum class ItemStatus { Pass, Fail, Inconclusive };
std::string to_string(ItemStatus s);

struct Witness {
  BigInt t;
  std::size_t index = 0;  // position in the trace (t_index)
  std::vector<OrderVector> vectors;
  std::string detail;
};

struct ItemResult {
  ItemStatus status = ItemStatus::Inconclusive;
  std::string note;
  std::optional<Witness> witness;
};

/// Finite-horizon check of the six structural items for an extremal tuple:
/// (i) tau(t_i) = k, (ii) period k, (iii) diagonal jump calendar,
/// (iv) off-diagonal jump calendar, (v) the k largest jump next,
/// (vi) v(t_{i+1}) = pi(v(t_i)). A pass means "consistent at horizon".
struct VerificationReport {
  int k = 0;
  std::size_t n = 0;
  BigInt horizon;
  std::size_t trace_length = 0;
  std::size_t offset = 0;  // entry used as t_0 for the enumeration
  std::vector<std::pair<TriangularIndex, Label>> enumeration;
  std::array<ItemResult, 6> items;
  std::size_t distinct_vectors = 0;
  std::vector<std::string> warnings;

  // (vi) passing forces (ii) passing since pi has order k.
  bool consistent() const;
  bool all_pass() const;
};

inline constexpr std::array<const char*, 6> kItemNames = {"i", "ii", "iii", "iv", "v", "vi"};

VerificationReport verify_structure(const ChangeTrace& trace, int k);

enum class CheckStatus { Pass, Fail, Inconclusive, HypothesisNotMet };
std::string to_string(CheckStatus s);

// One coincidence q_{m+1} = h_{s+d} with h_{s-1} <= q_m < h_s, the first
// member of `roles` playing alpha.
struct BeforeJumpInstance {
  std::pair<Label, Label> roles;
  BigInt jump;      // q_{m+1}
  BigInt previous;  // q_m
  bool premise = false;     // psi_alpha(q_{m+1}-1) < psi_beta(q_{m+1}-1)
  bool conclusion = false;  // psi_alpha(q_m-1) > psi_beta(q_m-1)
};

struct BeforeJumpResult {
  CheckStatus status = CheckStatus::HypothesisNotMet;
  std::size_t instances = 0;     // hypothesis met
  std::size_t premise_held = 0;  // premise certified
  std::vector<BeforeJumpInstance> violations;
  std::string reason;
};

// Scans `events` merged jump events starting at t_start (clamped to max q_2)
// for shared denominators, with each member taking the alpha role in turn.
BeforeJumpResult check_before_jump(const FunctionTuple& pair, const BigInt& t_start, std::size_t events,
                          int depth_limit = kDefaultDepthLimit);

struct CoincidenceIndices {
  std::size_t m = 0;  // alpha: q_m = h_s
  std::size_t s = 0;  // beta
  std::size_t l = 0;  // gamma: q_{m+1} = r_l
};

struct CoincidenceResult {
  CheckStatus status = CheckStatus::Inconclusive;
  RationalBracket eta;  // psi_beta(h_{s+1})
  RationalBracket xi;   // psi_alpha(q_{m+1})
  std::string reason;
};

// Requires the six coincidences q_m=h_s, q_{m+1}=r_l, r_{l+1}=h_{s+1},
// q_{m+2}=h_{s+2}, q_{m+3}=r_{l+2}, r_{l+3}=h_{s+3} (PatternMismatch
// otherwise) and certifies psi_beta > psi_alpha on [h_{s+1}, h_{s+2}).
CoincidenceResult check_coincidences(const PartialQuotientSource& alpha, const PartialQuotientSource& beta,
                          const PartialQuotientSource& gamma, const CoincidenceIndices& idx,
                          int depth_limit = kDefaultDepthLimit);

// First index triple matching the six coincidences with q_m <= horizon.
std::optional<CoincidenceIndices> find_coincidence_pattern(const PartialQuotientSource& alpha,
                                                 const PartialQuotientSource& beta,
                                                 const PartialQuotientSource& gamma,
                                                 const BigInt& horizon);

// Certified sign reversals of psi_a - psi_b at change moments in (t_0, horizon].
std::size_t sign_changes(const FunctionTuple& pair, const BigInt& horizon,
                         const BigInt& t0 = BigInt(1), int depth_limit = kDefaultDepthLimit);

struct BoundCheck {
  bool consistent = true;
  std::string message;
};

// n <= k(k+1)/2 with k the observed (lower-bound) count of distinct vectors.
BoundCheck bound_check(std::size_t n, std::size_t k_lower);

}  // namespace psiorder
