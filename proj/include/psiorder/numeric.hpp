#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace psiorder {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt parse_bigint(std::string_view text);
Rational parse_rational(std::string_view text);  // "p/q", "p", "d.ddd" or "d.ddde-7"
std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);

BigInt floor_of(const Rational& x);

// Decimal rendering with `digits` significant digits, rounded toward -inf
// (round_up = false) or +inf (round_up = true). Used for CSV export so that
// printed brackets still contain the exact value.
std::string to_decimal(const Rational& x, int digits, bool round_up);

// 2^-bits as an exact rational.
Rational pow2_inverse(unsigned bits);
Rational pow10_inverse(unsigned digits);

// A closed interval [lo, hi] of rationals known to contain some real.
struct RationalBracket {
  Rational lo;
  Rational hi;

  RationalBracket() = default;
  RationalBracket(Rational a, Rational b);  // orders the ends

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const RationalBracket& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
  }
  bool overlaps(const RationalBracket& other) const {
    return lo <= other.hi && other.lo <= hi;
  }
  // Strictly below `other`: every point here is less than every point there.
  bool below(const RationalBracket& other) const { return hi < other.lo; }

  RationalBracket intersect(const RationalBracket& other) const;
  RationalBracket scaled(const BigInt& factor) const;  // factor >= 0
  RationalBracket shifted(const Rational& offset) const;

  friend bool operator==(const RationalBracket& a, const RationalBracket& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Exact range of x -> ||x|| (distance to the nearest integer) over a bracket.
RationalBracket nearest_integer_distance(const RationalBracket& x);

// Interval minimum: brackets [min lo, min hi] of min(a, b).
RationalBracket bracket_min(const RationalBracket& a, const RationalBracket& b);

}  // namespace psiorder
