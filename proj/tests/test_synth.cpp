#include <gtest/gtest.h>

#include <numeric>

#include "psiorder/errors.hpp"
#include "psiorder/synth.hpp"
#include "psiorder/verify.hpp"

using namespace psiorder;

TEST(Congruences, MergeCoprime) {
  auto c = merge_congruences({BigInt(2), BigInt(3)}, {BigInt(3), BigInt(5)});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->residue, 8);
  EXPECT_EQ(c->modulus, 15);
}

TEST(Congruences, MergeSharedFactor) {
  auto c = merge_congruences({BigInt(1), BigInt(4)}, {BigInt(3), BigInt(6)});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->residue, 9);
  EXPECT_EQ(c->modulus, 12);
  EXPECT_FALSE(merge_congruences({BigInt(1), BigInt(4)}, {BigInt(2), BigInt(6)}));
}

TEST(Congruences, SolveSystem) {
  auto c = solve_congruences({{BigInt(1), BigInt(2)}, {BigInt(2), BigInt(3)}, {BigInt(3), BigInt(5)}, {BigInt(0), BigInt(1)}});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->residue, 23);
  EXPECT_EQ(c->modulus, 30);
  auto empty = solve_congruences({});
  ASSERT_TRUE(empty);
  EXPECT_EQ(empty->modulus, 1);
}

TEST(Congruences, BruteForceAgreement) {
  for (long m1 = 1; m1 <= 12; ++m1) {
    for (long m2 = 1; m2 <= 12; ++m2) {
      for (long r1 = 0; r1 < m1; ++r1) {
        for (long r2 = 0; r2 < m2; ++r2) {
          long first = -1;
          for (long x = 0; x < m1 * m2 && first < 0; ++x) {
            if (x % m1 == r1 && x % m2 == r2) first = x;
          }
          auto c = merge_congruences({BigInt(r1), BigInt(m1)}, {BigInt(r2), BigInt(m2)});
          ASSERT_EQ(c.has_value(), first >= 0);
          if (c) {
            EXPECT_EQ(c->residue, first);
            EXPECT_EQ(c->modulus, std::lcm(m1, m2));
          }
        }
      }
    }
  }
}

TEST(Schedule, ExtremalShape) {
  auto s = extremal_schedule(3, 2);
  EXPECT_EQ(s.labels, (std::vector<Label>{"psi_1_1", "psi_1_3", "psi_1_2", "psi_2_2", "psi_2_3", "psi_3_3"}));
  ASSERT_EQ(s.events.size(), 6u);
  EXPECT_EQ(s.events[0], (std::vector<Label>{"psi_1_1", "psi_1_3", "psi_1_2"}));
  EXPECT_EQ(s.events[1], (std::vector<Label>{"psi_1_2", "psi_2_2", "psi_2_3"}));
  EXPECT_EQ(s.events[2], (std::vector<Label>{"psi_1_3", "psi_2_3", "psi_3_3"}));
  EXPECT_EQ(s.events[3], s.events[0]);
  EXPECT_THROW(extremal_schedule(1, 2), InvalidArgument);
}

TEST(Schedule, Validation) {
  JumpSchedule s;
  s.labels = {"a", "b"};
  s.events = {{"a"}, {"c"}};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.events = {{"a"}, {"a", "a"}};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.events = {{"a"}};
  EXPECT_THROW(s.validate(), InvalidArgument);  // b never jumps
  s.events = {{"a"}, {"a", "b"}};
  EXPECT_NO_THROW(s.validate());
  s.prefixes["a"] = {BigInt(0), BigInt(0)};
  EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(Synthesize, ExtremalReplays) {
  for (int k = 2; k <= 4; ++k) {
    auto schedule = extremal_schedule(k, 3);
    auto result = synthesize(schedule);
    EXPECT_EQ(replay_check(schedule, result), "");
    EXPECT_EQ(result.sources.size(), triangle_size(k));
    for (std::size_t e = 0; e < schedule.events.size(); ++e) {
      EXPECT_EQ(result.certificates[e].size(), static_cast<std::size_t>(k));
      for (const auto& c : result.certificates[e]) {
        EXPECT_EQ(c.quotient * c.q + c.q_prev, result.denominators[e]);
        EXPECT_GE(c.quotient, 1);
      }
    }
  }
}

TEST(Synthesize, Deterministic) {
  auto schedule = extremal_schedule(3, 2);
  auto a = synthesize(schedule);
  auto b = synthesize(schedule);
  EXPECT_EQ(a.denominators, b.denominators);
  for (std::size_t i = 0; i < a.sources.size(); ++i) EXPECT_EQ(a.sources[i], b.sources[i]);
}

TEST(Synthesize, InfeasiblePrefixes) {
  JumpSchedule s;
  s.labels = {"f", "g"};
  s.events = {{"f", "g"}};
  s.prefixes["f"] = {BigInt(0), BigInt(3)};             // q = 3, previous 1
  s.prefixes["g"] = {BigInt(0), BigInt(5), BigInt(1)};  // q = 6, previous 5
  EXPECT_THROW(synthesize(s), InfeasibleSchedule);
}

TEST(Synthesize, SearchBound) {
  SynthesisOptions options;
  options.search_bound = 2;
  EXPECT_THROW(synthesize(extremal_schedule(3, 4), options), InfeasibleSchedule);
}

TEST(Synthesize, ReplayDetectsTampering) {
  auto schedule = extremal_schedule(2, 2);
  auto result = synthesize(schedule);
  result.denominators[1] += 1;
  EXPECT_NE(replay_check(schedule, result), "");
}

TEST(Synthesize, CoincidentPairMeetsBeforeJumpHypothesis) {
  JumpSchedule s;
  s.labels = {"alpha", "beta"};
  s.events = {{"alpha"}, {"beta"}, {"alpha", "beta"}, {"alpha"}, {"beta"}, {"alpha", "beta"}};
  auto result = synthesize(s);
  ASSERT_EQ(replay_check(s, result), "");
  auto scan = check_before_jump(result.tuple(), BigInt(1), 40);
  EXPECT_GT(scan.instances, 0u);
  EXPECT_TRUE(scan.violations.empty());
}

TEST(Synthesize, TripleMatchesPatternAndCertifies) {
  auto schedule = coincidence_schedule();
  auto result = synthesize(schedule);
  ASSERT_EQ(replay_check(schedule, result), "");
  const auto& src = result.sources;
  auto idx = find_coincidence_pattern(src[0], src[1], src[2], result.denominators.front());
  ASSERT_TRUE(idx);
  auto verdict = check_coincidences(src[0], src[1], src[2], *idx);
  EXPECT_EQ(verdict.status, CheckStatus::Pass) << verdict.reason;
  EXPECT_TRUE(verdict.eta.lo > verdict.xi.hi);
}
