#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "stratsim/random.hpp"

using namespace stratsim;

TEST(RandomSource, SameSeedSameStream) {
  RandomSource a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomSource, EngineMatchesReferenceOutput) {
  // The 10000th output of mt19937_64 with its default seed is fixed by the
  // C++ standard.
  RandomSource r(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = r.next_u64();
  EXPECT_EQ(v, 9981545732273789042ull);
}

TEST(RandomSource, Uniform01InRange) {
  RandomSource r(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
}

TEST(RandomSource, UniformIndexIsUniform) {
  RandomSource r(3);
  std::array<int, 7> counts{};
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto k = r.uniform_index(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - draws / 7.0) * (c - draws / 7.0) / (draws / 7.0);
  EXPECT_LT(chi2, 22.458);  // 6 dof, p = 0.001
  EXPECT_THROW(r.uniform_index(0), std::invalid_argument);
}

TEST(RandomSource, WeightedIndexFollowsWeights) {
  RandomSource r(11);
  const std::vector<double> w{0.0, 1.0, 3.0, 0.0, 6.0};
  std::array<int, 5> counts{};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[r.weighted_index(w)];
  EXPECT_EQ(counts[0], 0);
  EXPECT_EQ(counts[3], 0);
  EXPECT_NEAR(counts[1] / double(draws), 0.1, 0.006);
  EXPECT_NEAR(counts[2] / double(draws), 0.3, 0.006);
  EXPECT_NEAR(counts[4] / double(draws), 0.6, 0.006);
  const std::vector<double> zeros(3, 0.0);
  EXPECT_THROW(r.weighted_index(zeros), std::invalid_argument);
}

TEST(RandomSource, NormalMoments) {
  RandomSource r(5);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal(1.0, 0.25);
    s += x;
    s2 += x * x;
  }
  const double mean = s / n;
  EXPECT_NEAR(mean, 1.0, 0.003);
  EXPECT_NEAR(std::sqrt(s2 / n - mean * mean), 0.25, 0.003);
}

TEST(RandomSource, ShuffleIsPermutation) {
  RandomSource r(9);
  auto v = test::identity(100);
  r.shuffle(std::span<AgentId>(v));
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, test::identity(100));
  EXPECT_NE(v, test::identity(100));
}
