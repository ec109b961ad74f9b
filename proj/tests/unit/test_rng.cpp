#include <gtest/gtest.h>

#include <set>

#include "ergm/rng.hpp"

using ergm::Rng;

TEST(Philox, KnownAnswerZero) {
  const auto out = Rng::philox({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerAllOnes) {
  const auto out = Rng::philox({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Rng::philox({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0});
  EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Rng, SameSeedAndStreamReplays) {
  Rng a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, StreamsDiffer) {
  Rng a(42, 0), b(42, 1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 256; ++i) seen.insert(a.next_u64());
  int shared = 0;
  for (int i = 0; i < 256; ++i) shared += seen.count(b.next_u64());
  EXPECT_EQ(shared, 0);
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(1, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(Rng, BelowIsUnbiasedOnSmallBound) {
  Rng r(5, 3);
  std::array<int, 7> hits{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (int h : hits) EXPECT_NEAR(h, draws / 7, 400);
}

TEST(Rng, BelowOneIsZero) {
  Rng r(9, 9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(r.below(1), 0u);
}
