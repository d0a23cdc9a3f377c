#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "psiorder/cf.hpp"
#include "psiorder/numeric.hpp"

namespace psiorder {

/// Exact, refinable handle on one staircase level of psi_alpha:
/// value = ||q_m alpha||, which is psi_alpha(t) for every t in [q_m, q_{m+1}).
struct ApproximationError {
  std::string label;
  std::size_t m = 0;
  BigInt q;               // q_m
  RationalBracket value;  // always contains ||q_m alpha||
  std::size_t depth = 0;  // partial quotients consumed by the alpha bracket
};

enum class Ordering { Less, Greater };

struct ComparisonVerdict {
  Ordering order;
  int rounds;  // refinement rounds needed to separate the brackets
};

inline constexpr int kDefaultDepthLimit = 64;
inline constexpr unsigned kDefaultTargetWidthBits = 80;
inline constexpr long kDefaultOracleCap = 100000;

inline Rational default_target_width() { return pow2_inverse(kDefaultTargetWidthBits); }

/// psi_alpha as a staircase over convergent denominators, with cached
/// convergents. One instance per function; not shared across threads.
class PsiFunction {
 public:
  PsiFunction(std::string label, PartialQuotientSource source);

  const std::string& label() const { return label_; }
  const PartialQuotientSource& source() const { return table_.source(); }
  ConvergentTable& convergents() { return table_; }

  std::size_t level_at(const BigInt& t) { return table_.level_at(t); }

  // Level m at its initial depth (alpha bracketed with terms through a_{m+2}).
  ApproximationError level(std::size_t m);
  // One more partial quotient; the bracket never widens.
  void refine(ApproximationError& e, std::size_t extra = 1);
  void refine_to(ApproximationError& e, const Rational& target_width);

  ApproximationError at(const BigInt& t, const Rational& target_width);
  ApproximationError left_limit(const BigInt& t, const Rational& target_width);

  // Perron's form 1/(q_m alpha_{m+1} + q_{m-1}) with alpha_{m+1} bracketed
  // by `depth` of its own partial quotients.
  RationalBracket perron(std::size_t m, std::size_t depth);

 private:
  RationalBracket evaluate(std::size_t m, std::size_t depth);

  std::string label_;
  ConvergentTable table_;
};

// psi_alpha(t) for integer t >= 1: the level of the largest q_m <= t, with
// bracket width <= target_width.
ApproximationError psi_at(const PartialQuotientSource& source, const BigInt& t,
                          const Rational& target_width = default_target_width());

// Value on [q_{m-1}, q_m) for t = q_m: the level just before the jump at t.
// Throws NotAJumpPoint when t is not a denominator (or t = 1).
ApproximationError psi_left_limit(const PartialQuotientSource& source, const BigInt& t,
                                  const Rational& target_width = default_target_width());

RationalBracket xi_perron(const PartialQuotientSource& source, std::size_t m,
                          std::size_t depth);

// Separates two levels by alternately refining each side one partial
// quotient per round. `a` and `b` keep their refined state for reuse.
ComparisonVerdict compare_levels(PsiFunction& f, ApproximationError& a, PsiFunction& g,
                                 ApproximationError& b, int depth_limit = kDefaultDepthLimit);

// Strict comparison of psi_f(t) against psi_g(t); Less means psi_f(t) < psi_g(t).
ComparisonVerdict compare_psi(PsiFunction& f, PsiFunction& g, const BigInt& t,
                              int depth_limit = kDefaultDepthLimit);
ComparisonVerdict compare_psi(const PartialQuotientSource& f, const PartialQuotientSource& g,
                              const BigInt& t, int depth_limit = kDefaultDepthLimit);

// Independent oracle: min over 1 <= q <= t of ||q alpha|| from one deep
// bracket of alpha. Result width <= precision. Throws CapExceeded for t > cap.
RationalBracket brute_force_psi(const PartialQuotientSource& source, long t,
                                const Rational& precision, long cap = kDefaultOracleCap);

// Running minima for every t in 1..t_max; element [t] brackets psi(t), [0] unused.
std::vector<RationalBracket> brute_force_psi_series(const PartialQuotientSource& source,
                                                    long t_max, const Rational& precision,
                                                    long cap = kDefaultOracleCap);

}  // namespace psiorder
