#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psiorder/numeric.hpp"

namespace psiorder {

/// The partial quotients [a_0; a_1, a_2, ...] of one irrational number.
///
/// Sources are immutable values. `term(m)` is a pure function of the source,
/// so copies can be evaluated independently on different threads.
class PartialQuotientSource {
 public:
  struct Periodic {
    BigInt a0;
    std::vector<BigInt> preperiod;  // a_1 .. a_r
    std::vector<BigInt> period;     // repeated forever after the preperiod
  };
  struct Explicit {
    std::vector<BigInt> terms;  // terms[0] = a_0; finite
  };
  struct Rule {
    enum class Kind { E, Constant };
    Kind kind = Kind::E;
    BigInt constant;  // used by Kind::Constant: every term, a_0 included
  };
  struct Seeded {
    std::uint64_t seed = 0;
    std::uint64_t bound = 1;  // a_m uniform in [1, bound] for m >= 1; a_0 = 0
  };
  using Variant = std::variant<Periodic, Explicit, Rule, Seeded>;

  static PartialQuotientSource periodic(BigInt a0, std::vector<BigInt> preperiod,
                                        std::vector<BigInt> period);
  static PartialQuotientSource explicit_terms(std::vector<BigInt> terms);
  static PartialQuotientSource euler();
  static PartialQuotientSource constant(BigInt c);
  static PartialQuotientSource seeded(std::uint64_t seed, std::uint64_t bound);

  // Grammar: "periodic:[a0;pre|period]", "explicit:[a0;a1,a2,...]", "rule:e",
  // "rule:const:c", "seeded:<seed>:<bound>".
  static PartialQuotientSource parse(std::string_view spec);

  // a_m, or nullopt once a finite source runs out.
  std::optional<BigInt> term(std::size_t m) const;
  BigInt require_term(std::size_t m) const;  // throws SourceExhausted

  // Number of terms for finite sources, nullopt for infinite ones.
  std::optional<std::size_t> length() const;

  // Canonical spec string; parse(spec()) reproduces the source.
  std::string spec() const;

  const Variant& variant() const { return data_; }

  friend bool operator==(const PartialQuotientSource& a, const PartialQuotientSource& b) {
    return a.spec() == b.spec();
  }

 private:
  explicit PartialQuotientSource(Variant v) : data_(std::move(v)) {}
  Variant data_;
};

// Name of the generator behind Seeded sources; recorded in trace headers.
inline constexpr std::string_view kSeededGenerator = "splitmix64";

// One step of the convergent recurrence: (p_m, p_{m-1}, q_m, q_{m-1}, m).
struct ConvergentState {
  std::size_t m = 0;
  BigInt p;       // p_m
  BigInt p_prev;  // p_{m-1}
  BigInt q;       // q_m
  BigInt q_prev;  // q_{m-1}

  static ConvergentState initial(const BigInt& a0);  // m = 0: a0/1, prev 1/0

  // p_m q_{m-1} - p_{m-1} q_m; equals (-1)^{m-1}.
  BigInt determinant() const { return p * q_prev - p_prev * q; }
};

ConvergentState next_convergent(const ConvergentState& state, const BigInt& a);

/// Lazily extended table of convergents p_m/q_m for one source.
///
/// Not thread-safe: each owner extends its own copy.
class ConvergentTable {
 public:
  explicit ConvergentTable(PartialQuotientSource source);

  const PartialQuotientSource& source() const { return source_; }

  // Extends the table through index m. Throws SourceExhausted.
  void ensure(std::size_t m);
  // True if the table can be extended through m without exhausting.
  bool try_ensure(std::size_t m);
  std::size_t computed() const { return q_.size(); }

  const BigInt& p(std::size_t m) { ensure(m); return p_[m]; }
  const BigInt& q(std::size_t m) { ensure(m); return q_[m]; }
  const BigInt& a(std::size_t m) { ensure(m); return a_[m]; }

  // Largest m with q_m <= t (t >= 1). Ties q_0 = q_1 = 1 resolve to m = 1.
  std::size_t level_at(const BigInt& t);

  // Index m with q_m == t (the larger one for t = 1), if t is a denominator.
  std::optional<std::size_t> index_of_denominator(const BigInt& t);

  // alpha between p_{d-1}/q_{d-1} and p_{d-2}/q_{d-2}; uses terms a_0..a_{d-1}.
  RationalBracket bracket(std::size_t depth);

 private:
  PartialQuotientSource source_;
  std::vector<BigInt> a_;
  std::vector<BigInt> p_;
  std::vector<BigInt> q_;
};

// Bracket of alpha from its first `depth` partial quotients (depth >= 2).
// Width is 1/(q_{depth-1} q_{depth-2}).
RationalBracket bracket(const PartialQuotientSource& source, std::size_t depth);

// Bracket of the tail alpha_m = [a_m; a_{m+1}, ...] from `depth` of its terms.
RationalBracket tail_bracket(const PartialQuotientSource& source, std::size_t m,
                             std::size_t depth);

}  // namespace psiorder
