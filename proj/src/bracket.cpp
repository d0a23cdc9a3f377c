#include "psiorder/errors.hpp"
#include "psiorder/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace psiorder {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt pow10(unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (!is_integer_text(s)) throw ParseError("not an integer: '" + std::string(text) + "'");
  return BigInt(s, 10);
}

Rational parse_rational(std::string_view text) {
  if (auto exp = text.find_first_of("eE"); exp != std::string_view::npos) {
    const Rational mantissa = parse_rational(text.substr(0, exp));
    const BigInt power = parse_bigint(text.substr(exp + 1));
    if (abs(power) > 100000) throw ParseError("exponent out of range: '" + std::string(text) + "'");
    const long p = power.get_si();
    return p >= 0 ? Rational(mantissa / pow10_inverse(static_cast<unsigned>(p)))
                  : Rational(mantissa * pow10_inverse(static_cast<unsigned>(-p)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos) {
      throw ParseError("not a decimal: '" + std::string(text) + "'");
    }
    const bool negative = !whole.empty() && whole[0] == '-';
    const std::string_view digits = negative ? whole.substr(1) : whole;
    Rational r(digits.empty() ? BigInt(0) : parse_bigint(digits));
    r += Rational(parse_bigint(frac)) * pow10_inverse(static_cast<unsigned>(frac.size()));
    return negative ? Rational(-r) : r;
  }
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& x) { return x.get_str(10); }
std::string to_string(const Rational& x) { return x.get_str(10); }

BigInt floor_of(const Rational& x) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

std::string to_decimal(const Rational& x, int digits, bool round_up) {
  if (x == 0) return "0";
  if (x < 0) {
    std::string s = to_decimal(Rational(-x), digits, !round_up);
    return "-" + s;
  }
  // Find e with 10^e <= x < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 10));
  auto scale_of = [](long p) {
    return p >= 0 ? Rational(pow10(static_cast<unsigned>(p)))
                  : Rational(BigInt(1), pow10(static_cast<unsigned>(-p)));
  };
  while (scale_of(e) > x) --e;
  while (scale_of(e + 1) <= x) ++e;
  const long shift = digits - 1 - e;
  Rational scaled = x * scale_of(shift);
  scaled.canonicalize();
  BigInt mant = floor_of(scaled);
  if (round_up && Rational(mant) != scaled) mant += 1;
  std::string m = mant.get_str(10);
  // m has `digits` or `digits + 1` characters (carry on round-up).
  long exponent = e + static_cast<long>(m.size()) - digits;
  std::string out;
  out += m[0];
  std::string rest = m.substr(1);
  while (!rest.empty() && rest.back() == '0') rest.pop_back();
  if (!rest.empty()) out += "." + rest;
  if (exponent != 0) out += "e" + std::to_string(exponent);
  return out;
}

Rational pow2_inverse(unsigned bits) {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  return Rational(BigInt(1), den);
}

Rational pow10_inverse(unsigned digits) { return Rational(BigInt(1), pow10(digits)); }

RationalBracket::RationalBracket(Rational a, Rational b) {
  if (b < a) std::swap(a, b);
  lo = std::move(a);
  hi = std::move(b);
}

RationalBracket RationalBracket::intersect(const RationalBracket& other) const {
  RationalBracket r;
  r.lo = std::max(lo, other.lo);
  r.hi = std::min(hi, other.hi);
  if (r.hi < r.lo) throw InvalidArgument("intersect: disjoint brackets");
  return r;
}

RationalBracket RationalBracket::scaled(const BigInt& factor) const {
  return RationalBracket(Rational(lo * factor), Rational(hi * factor));
}

RationalBracket RationalBracket::shifted(const Rational& offset) const {
  return RationalBracket(Rational(lo + offset), Rational(hi + offset));
}

RationalBracket nearest_integer_distance(const RationalBracket& x) {
  static const Rational half(1, 2);
  if (x.width() >= 1) return RationalBracket(Rational(0), half);
  auto dist = [](const Rational& v) {
    Rational f(floor_of(v));
    Rational d = v - f;
    return d <= half ? d : Rational(1 - d);
  };
  std::vector<Rational> candidates{dist(x.lo), dist(x.hi)};
  BigInt base = floor_of(x.lo);
  // Integers and half-integers inside the bracket are the only interior
  // critical points of ||.||; a width below 1 admits at most two of each.
  for (int step = 0; step <= 4; ++step) {
    Rational p = Rational(base) + Rational(step) / 2;
    if (x.contains(p)) candidates.push_back(dist(p));
  }
  auto [mn, mx] = std::minmax_element(candidates.begin(), candidates.end());
  return RationalBracket(*mn, *mx);
}

RationalBracket bracket_min(const RationalBracket& a, const RationalBracket& b) {
  RationalBracket r;
  r.lo = std::min(a.lo, b.lo);
  r.hi = std::min(a.hi, b.hi);
  return r;
}

}  // namespace psiorder
