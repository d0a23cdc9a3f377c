#include "psiorder/cf.hpp"

#include <algorithm>
#include <cctype>

#include "psiorder/errors.hpp"

namespace psiorder {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<BigInt> parse_list(std::string_view s) {
  std::vector<BigInt> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    auto piece = trim(s.substr(start, comma == std::string_view::npos ? s.size() - start
                                                                        : comma - start));
    out.push_back(parse_bigint(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<BigInt>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += to_string(xs[i]);
  }
  return out;
}

void require_positive(const std::vector<BigInt>& xs, std::string_view what) {
  for (const auto& x : xs) {
    if (x < 1) throw ParseError(std::string(what) + ": partial quotients a_m (m >= 1) must be >= 1");
  }
}

// Body of "[a0;rest]".
std::pair<BigInt, std::string_view> split_bracketed(std::string_view body, std::string_view kind) {
  body = trim(body);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw ParseError(std::string(kind) + " source must look like [a0;...]");
  }
  body = body.substr(1, body.size() - 2);
  auto semi = body.find(';');
  if (semi == std::string_view::npos) return {parse_bigint(trim(body)), std::string_view{}};
  return {parse_bigint(trim(body.substr(0, semi))), body.substr(semi + 1)};
}

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + index * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  BigInt v = parse_bigint(trim(s));
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw ParseError(std::string(what) + " out of 64-bit range");
  }
  std::string text = v.get_str();
  return std::stoull(text);
}

}  // namespace

PartialQuotientSource PartialQuotientSource::periodic(BigInt a0, std::vector<BigInt> preperiod,
                                                      std::vector<BigInt> period) {
  if (period.empty()) throw ParseError("periodic source needs a nonempty period");
  require_positive(preperiod, "periodic");
  require_positive(period, "periodic");
  return PartialQuotientSource(Periodic{std::move(a0), std::move(preperiod), std::move(period)});
}

PartialQuotientSource PartialQuotientSource::explicit_terms(std::vector<BigInt> terms) {
  if (terms.empty()) throw ParseError("explicit source needs at least a_0");
  require_positive(std::vector<BigInt>(terms.begin() + 1, terms.end()), "explicit");
  return PartialQuotientSource(Explicit{std::move(terms)});
}

PartialQuotientSource PartialQuotientSource::euler() {
  return PartialQuotientSource(Rule{Rule::Kind::E, BigInt(0)});
}

PartialQuotientSource PartialQuotientSource::constant(BigInt c) {
  if (c < 1) throw ParseError("rule:const needs c >= 1");
  return PartialQuotientSource(Rule{Rule::Kind::Constant, std::move(c)});
}

PartialQuotientSource PartialQuotientSource::seeded(std::uint64_t seed, std::uint64_t bound) {
  if (bound < 1) throw ParseError("seeded source needs quotient bound >= 1");
  return PartialQuotientSource(Seeded{seed, bound});
}

PartialQuotientSource PartialQuotientSource::parse(std::string_view spec) {
  spec = trim(spec);
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("source spec lacks a kind: '" + std::string(spec) + "'");
  auto kind = spec.substr(0, colon);
  auto body = spec.substr(colon + 1);
  if (kind == "periodic") {
    auto [a0, rest] = split_bracketed(body, "periodic");
    auto bar = rest.find('|');
    if (bar == std::string_view::npos) throw ParseError("periodic source needs '|' before the period");
    return periodic(a0, parse_list(rest.substr(0, bar)), parse_list(rest.substr(bar + 1)));
  }
  if (kind == "explicit") {
    auto [a0, rest] = split_bracketed(body, "explicit");
    std::vector<BigInt> terms{a0};
    auto tail = parse_list(rest);
    terms.insert(terms.end(), tail.begin(), tail.end());
    return explicit_terms(std::move(terms));
  }
  if (kind == "rule") {
    body = trim(body);
    if (body == "e") return euler();
    if (body.substr(0, 6) == "const:") return constant(parse_bigint(trim(body.substr(6))));
    throw ParseError("unknown rule '" + std::string(body) + "'");
  }
  if (kind == "seeded") {
    auto sep = body.find(':');
    if (sep == std::string_view::npos) throw ParseError("seeded source needs seeded:<seed>:<bound>");
    return seeded(parse_u64(body.substr(0, sep), "seed"), parse_u64(body.substr(sep + 1), "bound"));
  }
  throw ParseError("unknown source kind '" + std::string(kind) + "'");
}

std::optional<BigInt> PartialQuotientSource::term(std::size_t m) const {
  return std::visit(
      [m](const auto& s) -> std::optional<BigInt> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Periodic>) {
          if (m == 0) return s.a0;
          if (m <= s.preperiod.size()) return s.preperiod[m - 1];
          return s.period[(m - 1 - s.preperiod.size()) % s.period.size()];
        } else if constexpr (std::is_same_v<T, Explicit>) {
          if (m < s.terms.size()) return s.terms[m];
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Rule>) {
          if (s.kind == Rule::Kind::Constant) return s.constant;
          if (m == 0) return BigInt(2);
          if (m % 3 == 2) return BigInt(static_cast<unsigned long>(2 * ((m - 2) / 3 + 1)));
          return BigInt(1);
        } else {
          if (m == 0) return BigInt(0);
          auto z = splitmix64_at(s.seed, m);
          auto scaled = static_cast<unsigned __int128>(z) * s.bound;
          auto draw = static_cast<std::uint64_t>(scaled >> 64);
          return BigInt(static_cast<unsigned long>(draw + 1));
        }
      },
      data_);
}

BigInt PartialQuotientSource::require_term(std::size_t m) const {
  auto t = term(m);
  if (!t) {
    throw SourceExhausted("source " + spec() + " has no partial quotient a_" + std::to_string(m));
  }
  return *t;
}

std::optional<std::size_t> PartialQuotientSource::length() const {
  if (auto e = std::get_if<Explicit>(&data_)) return e->terms.size();
  return std::nullopt;
}

std::string PartialQuotientSource::spec() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Periodic>) {
          return "periodic:[" + to_string(s.a0) + ";" + join(s.preperiod) + "|" + join(s.period) + "]";
        } else if constexpr (std::is_same_v<T, Explicit>) {
          std::vector<BigInt> tail(s.terms.begin() + 1, s.terms.end());
          return "explicit:[" + to_string(s.terms[0]) + ";" + join(tail) + "]";
        } else if constexpr (std::is_same_v<T, Rule>) {
          if (s.kind == Rule::Kind::E) return "rule:e";
          return "rule:const:" + to_string(s.constant);
        } else {
          return "seeded:" + std::to_string(s.seed) + ":" + std::to_string(s.bound);
        }
      },
      data_);
}

ConvergentState ConvergentState::initial(const BigInt& a0) {
  return ConvergentState{0, a0, BigInt(1), BigInt(1), BigInt(0)};
}

ConvergentState next_convergent(const ConvergentState& state, const BigInt& a) {
  if (a < 1) throw InvalidArgument("partial quotient must be >= 1, got " + to_string(a));
  ConvergentState next;
  next.m = state.m + 1;
  next.p = a * state.p + state.p_prev;
  next.q = a * state.q + state.q_prev;
  next.p_prev = state.p;
  next.q_prev = state.q;
  return next;
}

ConvergentTable::ConvergentTable(PartialQuotientSource source) : source_(std::move(source)) {}

bool ConvergentTable::try_ensure(std::size_t m) {
  while (q_.size() <= m) {
    auto next = source_.term(q_.size());
    if (!next) return false;
    if (q_.empty()) {
      a_.push_back(*next);
      p_.push_back(*next);
      q_.push_back(BigInt(1));
      continue;
    }
    const std::size_t i = q_.size();
    const BigInt p_prev = i >= 2 ? p_[i - 2] : BigInt(1);
    const BigInt q_prev = i >= 2 ? q_[i - 2] : BigInt(0);
    a_.push_back(*next);
    p_.push_back(*next * p_[i - 1] + p_prev);
    q_.push_back(*next * q_[i - 1] + q_prev);
  }
  return true;
}

void ConvergentTable::ensure(std::size_t m) {
  if (!try_ensure(m)) {
    throw SourceExhausted("source " + source_.spec() + " has no partial quotient a_" +
                          std::to_string(q_.size()));
  }
}

std::size_t ConvergentTable::level_at(const BigInt& t) {
  if (t < 1) throw InvalidArgument("psi is defined for t >= 1");
  std::size_t m = 0;
  while (true) {
    ensure(m + 1);
    if (q_[m + 1] > t) return m;
    ++m;
  }
}

std::optional<std::size_t> ConvergentTable::index_of_denominator(const BigInt& t) {
  if (t < 1) return std::nullopt;
  std::size_t m = level_at(t);
  if (q_[m] == t) return m;
  return std::nullopt;
}

RationalBracket ConvergentTable::bracket(std::size_t depth) {
  if (depth < 2) throw InvalidArgument("bracket depth must be >= 2");
  ensure(depth - 1);
  return RationalBracket(Rational(p_[depth - 1], q_[depth - 1]),
                         Rational(p_[depth - 2], q_[depth - 2]));
}

RationalBracket bracket(const PartialQuotientSource& source, std::size_t depth) {
  ConvergentTable table(source);
  return table.bracket(depth);
}

RationalBracket tail_bracket(const PartialQuotientSource& source, std::size_t m,
                             std::size_t depth) {
  if (depth < 2) throw InvalidArgument("tail bracket depth must be >= 2");
  auto state = ConvergentState::initial(source.require_term(m));
  ConvergentState prev = state;
  for (std::size_t i = 1; i < depth; ++i) {
    prev = state;
    state = next_convergent(state, source.require_term(m + i));
  }
  return RationalBracket(Rational(state.p, state.q), Rational(prev.p, prev.q));
}

}  // namespace psiorder
