#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "corrview/rng.hpp"

namespace corrview {
namespace {

TEST(Rng, SameSeedSameSequence) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    (void)c;
  }
  EXPECT_NE(Rng(42).next(), Rng(43).next());
}

TEST(Rng, VariatesStayInRange) {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(r.below(7), 7u);
  }
}

TEST(Rng, BelowHitsEveryValue) {
  Rng r(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(r.below(5));
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Rng, CategoricalSkipsZeroWeights) {
  Rng r(9);
  const std::vector<double> w = {0.0, 2.0, 0.0, 1.0};
  int counts[4] = {};
  for (int i = 0; i < 30000; ++i) ++counts[r.categorical(w, 3.0)];
  EXPECT_EQ(counts[0], 0);
  EXPECT_EQ(counts[2], 0);
  EXPECT_NEAR(counts[1] / 30000.0, 2.0 / 3.0, 0.02);
}

TEST(Rng, SerializeRestoresTheStream) {
  Rng a(5);
  for (int i = 0; i < 17; ++i) a.next();
  Rng b(0);
  ASSERT_TRUE(b.deserialize(a.serialize()));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.next(), b.next());
  EXPECT_FALSE(b.deserialize("not a state"));
}

TEST(Rng, StreamsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t base = 0; base < 4; ++base) {
    for (std::uint64_t s = 0; s < 4; ++s) seeds.insert(stream_seed(base, s));
  }
  EXPECT_EQ(seeds.size(), 16u);
  EXPECT_EQ(stream_seed(7, 2), stream_seed(7, 2));
}

TEST(Rng, ShuffleIsAPermutation) {
  Rng r(11);
  std::vector<int> v = {0, 1, 2, 3, 4, 5, 6, 7};
  r.shuffle(v);
  std::multiset<int> s(v.begin(), v.end());
  EXPECT_EQ(s, (std::multiset<int>{0, 1, 2, 3, 4, 5, 6, 7}));
}

}  // namespace
}  // namespace corrview
