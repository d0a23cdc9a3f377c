#include <gtest/gtest.h>

#include "psiorder/cf.hpp"
#include "psiorder/errors.hpp"

using namespace psiorder;

namespace {

const auto kPhi = PartialQuotientSource::parse("periodic:[1;|1]");
const auto kSqrt2 = PartialQuotientSource::parse("periodic:[1;|2]");

std::vector<BigInt> ints(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Source, ParsesEveryForm) {
  EXPECT_EQ(kPhi.require_term(0), 1);
  EXPECT_EQ(kPhi.require_term(17), 1);
  EXPECT_EQ(kSqrt2.require_term(0), 1);
  EXPECT_EQ(kSqrt2.require_term(5), 2);

  auto pre = PartialQuotientSource::parse("periodic:[0;3,1|2,5]");
  EXPECT_EQ(pre.require_term(0), 0);
  EXPECT_EQ(pre.require_term(1), 3);
  EXPECT_EQ(pre.require_term(2), 1);
  EXPECT_EQ(pre.require_term(3), 2);
  EXPECT_EQ(pre.require_term(4), 5);
  EXPECT_EQ(pre.require_term(5), 2);

  auto ex = PartialQuotientSource::parse("explicit:[-3;1,4,1]");
  EXPECT_EQ(ex.require_term(0), -3);
  EXPECT_EQ(ex.length(), std::optional<std::size_t>(4));
  EXPECT_FALSE(ex.term(4).has_value());
  EXPECT_THROW(ex.require_term(4), SourceExhausted);
}

TEST(Source, EulerRule) {
  auto e = PartialQuotientSource::parse("rule:e");
  const auto expected = ints({2, 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8});
  for (std::size_t m = 0; m < expected.size(); ++m) EXPECT_EQ(e.require_term(m), expected[m]) << m;
  EXPECT_FALSE(e.length().has_value());
}

TEST(Source, ConstantRule) {
  auto c = PartialQuotientSource::parse("rule:const:3");
  EXPECT_EQ(c.require_term(0), 3);
  EXPECT_EQ(c.require_term(40), 3);
  EXPECT_THROW(PartialQuotientSource::parse("rule:const:0"), ParseError);
}

TEST(Source, SeededIsDeterministicAndBounded) {
  auto a = PartialQuotientSource::parse("seeded:42:7");
  auto b = PartialQuotientSource::seeded(42, 7);
  auto c = PartialQuotientSource::seeded(43, 7);
  bool differs = false;
  EXPECT_EQ(a.require_term(0), 0);
  for (std::size_t m = 1; m < 500; ++m) {
    EXPECT_EQ(a.require_term(m), b.require_term(m));
    EXPECT_GE(a.require_term(m), 1);
    EXPECT_LE(a.require_term(m), 7);
    differs = differs || a.require_term(m) != c.require_term(m);
  }
  EXPECT_TRUE(differs);
  // Random access matches sequential access.
  EXPECT_EQ(PartialQuotientSource::seeded(42, 7).require_term(321), a.require_term(321));
}

TEST(Source, RejectsMalformedSpecs) {
  for (const char* bad : {"", "periodic:[1;|]", "periodic:[1;0|1]", "explicit:[1;2,0]", "explicit:[]",
                          "rule:pi", "seeded:1:0", "seeded:x:2", "nonsense:[1;2]", "periodic:[1;|-1]"}) {
    EXPECT_THROW(PartialQuotientSource::parse(bad), ParseError) << bad;
  }
}

TEST(Source, SpecRoundTrips) {
  for (const char* spec : {"periodic:[1;|1]", "periodic:[0;3,1|2,5]", "explicit:[-3;1,4,1]", "rule:e",
                           "rule:const:3", "seeded:42:7"}) {
    auto s = PartialQuotientSource::parse(spec);
    EXPECT_EQ(PartialQuotientSource::parse(s.spec()), s) << spec;
  }
}

TEST(Convergents, GoldenRatio) {
  ConvergentTable t(kPhi);
  const auto q = ints({1, 1, 2, 3, 5, 8, 13, 21});
  const auto p = ints({1, 2, 3, 5, 8, 13, 21, 34});
  for (std::size_t m = 0; m < q.size(); ++m) {
    EXPECT_EQ(t.q(m), q[m]);
    EXPECT_EQ(t.p(m), p[m]);
  }
}

TEST(Convergents, SqrtTwoAndE) {
  ConvergentTable s(kSqrt2);
  EXPECT_EQ(s.p(4), 41);
  EXPECT_EQ(s.q(4), 29);
  ConvergentTable e(PartialQuotientSource::euler());
  EXPECT_EQ(e.p(5), 87);
  EXPECT_EQ(e.q(5), 32);
}

TEST(Convergents, DeterminantIdentityToDepth500) {
  for (const auto& src : {kPhi, kSqrt2, PartialQuotientSource::euler(), PartialQuotientSource::seeded(9, 50)}) {
    auto state = ConvergentState::initial(src.require_term(0));
    EXPECT_EQ(state.determinant(), -1);
    for (std::size_t m = 1; m <= 500; ++m) {
      state = next_convergent(state, src.require_term(m));
      EXPECT_EQ(state.determinant(), m % 2 == 0 ? -1 : 1);
      ASSERT_EQ(state.m, m);
    }
  }
}

TEST(Convergents, RejectsNonPositiveQuotient) {
  auto state = ConvergentState::initial(BigInt(1));
  EXPECT_THROW(next_convergent(state, BigInt(0)), InvalidArgument);
}

TEST(Convergents, LevelAtResolvesDuplicateOne) {
  ConvergentTable t(kPhi);
  EXPECT_EQ(t.level_at(BigInt(1)), 1u);
  EXPECT_EQ(t.level_at(BigInt(2)), 2u);
  EXPECT_EQ(t.level_at(BigInt(4)), 3u);
  EXPECT_EQ(t.level_at(BigInt(12)), 5u);
  EXPECT_EQ(t.level_at(BigInt(13)), 6u);
  EXPECT_EQ(t.index_of_denominator(BigInt(13)), std::optional<std::size_t>(6));
  EXPECT_FALSE(t.index_of_denominator(BigInt(12)).has_value());

  ConvergentTable u(PartialQuotientSource::parse("periodic:[0;3|1]"));
  EXPECT_EQ(u.level_at(BigInt(1)), 0u);
  EXPECT_EQ(u.level_at(BigInt(3)), 1u);
}

TEST(Bracket, KnownEndpoints) {
  EXPECT_EQ(bracket(kPhi, 4), RationalBracket(Rational(3, 2), Rational(5, 3)));
  EXPECT_EQ(bracket(kSqrt2, 3), RationalBracket(Rational(7, 5), Rational(3, 2)));
}

TEST(Bracket, NestsAndShrinksAtKnownRate) {
  for (const auto& src : {kPhi, kSqrt2, PartialQuotientSource::euler(), PartialQuotientSource::seeded(5, 9)}) {
    ConvergentTable t(src);
    auto outer = bracket(src, 2);
    for (std::size_t d = 3; d < 80; ++d) {
      auto inner = bracket(src, d);
      EXPECT_TRUE(outer.contains(inner.lo) && outer.contains(inner.hi)) << d;
      EXPECT_EQ(inner.width(), Rational(1) / (Rational(t.q(d - 1)) * Rational(t.q(d - 2))));
      outer = inner;
    }
  }
}

TEST(Bracket, ExhaustedExplicitSource) {
  auto ex = PartialQuotientSource::parse("explicit:[0;2,3]");
  EXPECT_NO_THROW(bracket(ex, 3));
  EXPECT_THROW(bracket(ex, 4), SourceExhausted);
}

TEST(Bracket, TailOfGoldenRatioIsGoldenRatio) {
  auto tail = tail_bracket(kPhi, 5, 30);
  auto whole = bracket(kPhi, 30);
  EXPECT_TRUE(tail.overlaps(whole));
  auto root2_tail = tail_bracket(kSqrt2, 1, 30);  // 1 + sqrt 2
  EXPECT_TRUE(root2_tail.overlaps(bracket(kSqrt2, 30).shifted(Rational(1))));
}
