#include "psiorder/psi.hpp"

#include "psiorder/errors.hpp"

namespace psiorder {

PsiFunction::PsiFunction(std::string label, PartialQuotientSource source)
    : label_(std::move(label)), table_(std::move(source)) {}

RationalBracket PsiFunction::evaluate(std::size_t m, std::size_t depth) {
  auto alpha = table_.bracket(depth);
  return nearest_integer_distance(alpha.scaled(table_.q(m)));
}

ApproximationError PsiFunction::level(std::size_t m) {
  ApproximationError e;
  e.label = label_;
  e.m = m;
  e.depth = m + 3;
  e.q = table_.q(m);
  e.value = evaluate(m, e.depth);
  return e;
}

void PsiFunction::refine(ApproximationError& e, std::size_t extra) {
  e.depth += extra;
  e.value = evaluate(e.m, e.depth).intersect(e.value);
}

void PsiFunction::refine_to(ApproximationError& e, const Rational& target_width) {
  while (e.value.width() > target_width) refine(e);
}

ApproximationError PsiFunction::at(const BigInt& t, const Rational& target_width) {
  auto e = level(level_at(t));
  refine_to(e, target_width);
  return e;
}

ApproximationError PsiFunction::left_limit(const BigInt& t, const Rational& target_width) {
  if (t < 2) throw NotAJumpPoint("psi has no left limit at t = " + to_string(t));
  auto m = table_.index_of_denominator(t);
  if (!m) throw NotAJumpPoint(to_string(t) + " is not a convergent denominator of " + label_);
  auto e = level(*m - 1);
  refine_to(e, target_width);
  return e;
}

RationalBracket PsiFunction::perron(std::size_t m, std::size_t depth) {
  const BigInt& q = table_.q(m);
  const BigInt q_prev = m == 0 ? BigInt(0) : table_.q(m - 1);
  auto tail = tail_bracket(table_.source(), m + 1, depth);
  Rational low_den = tail.lo * q + q_prev;
  Rational high_den = tail.hi * q + q_prev;
  return RationalBracket(Rational(1 / high_den), Rational(1 / low_den));
}

ApproximationError psi_at(const PartialQuotientSource& source, const BigInt& t,
                          const Rational& target_width) {
  PsiFunction f("alpha", source);
  return f.at(t, target_width);
}

ApproximationError psi_left_limit(const PartialQuotientSource& source, const BigInt& t,
                                  const Rational& target_width) {
  PsiFunction f("alpha", source);
  return f.left_limit(t, target_width);
}

RationalBracket xi_perron(const PartialQuotientSource& source, std::size_t m,
                          std::size_t depth) {
  if (m < 1) throw InvalidArgument("xi_perron needs m >= 1");
  PsiFunction f("alpha", source);
  return f.perron(m, depth);
}

ComparisonVerdict compare_levels(PsiFunction& f, ApproximationError& a, PsiFunction& g,
                                 ApproximationError& b, int depth_limit) {
  for (int round = 0;; ++round) {
    if (a.value.below(b.value)) return {Ordering::Less, round};
    if (b.value.below(a.value)) return {Ordering::Greater, round};
    if (round >= depth_limit) break;
    f.refine(a);
    if (a.value.below(b.value)) return {Ordering::Less, round + 1};
    if (b.value.below(a.value)) return {Ordering::Greater, round + 1};
    g.refine(b);
  }
  throw ComparisonUndecided(f.label(), g.label(), depth_limit);
}

ComparisonVerdict compare_psi(PsiFunction& f, PsiFunction& g, const BigInt& t,
                              int depth_limit) {
  auto a = f.level(f.level_at(t));
  auto b = g.level(g.level_at(t));
  return compare_levels(f, a, g, b, depth_limit);
}

ComparisonVerdict compare_psi(const PartialQuotientSource& f, const PartialQuotientSource& g,
                              const BigInt& t, int depth_limit) {
  PsiFunction pf("f", f);
  PsiFunction pg("g", g);
  return compare_psi(pf, pg, t, depth_limit);
}

std::vector<RationalBracket> brute_force_psi_series(const PartialQuotientSource& source,
                                                    long t_max, const Rational& precision,
                                                    long cap) {
  if (t_max < 1) throw InvalidArgument("brute force needs t >= 1");
  if (t_max > cap) {
    throw CapExceeded("brute force oracle capped at t = " + std::to_string(cap) + ", asked " +
                      std::to_string(t_max));
  }
  // Deep enough that q * width(alpha) <= precision for every q <= t_max.
  ConvergentTable table(source);
  std::size_t depth = 2;
  RationalBracket alpha = table.bracket(depth);
  while (Rational(alpha.width() * t_max) > precision) alpha = table.bracket(++depth);

  std::vector<RationalBracket> out(static_cast<std::size_t>(t_max) + 1);
  RationalBracket best;
  for (long q = 1; q <= t_max; ++q) {
    auto d = nearest_integer_distance(alpha.scaled(BigInt(q)));
    best = q == 1 ? d : bracket_min(best, d);
    out[static_cast<std::size_t>(q)] = best;
  }
  return out;
}

RationalBracket brute_force_psi(const PartialQuotientSource& source, long t,
                                const Rational& precision, long cap) {
  return brute_force_psi_series(source, t, precision, cap).back();
}

}  // namespace psiorder
