#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "stratsim/model.hpp"
#include "stratsim/stats.hpp"

using namespace stratsim;

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) r[idx[i]] = static_cast<double>(i);
  return r;
}

}  // namespace

TEST(Culture, SizeAndPositiveWeights) {
  ModelConfig c = test::small_config();
  c.culture_size = 250;
  RandomSource rng(1);
  const Culture culture = init_culture(c, rng);
  ASSERT_EQ(culture.size(), 250u);
  for (double w : culture.popularity_weight) EXPECT_GT(w, 0.0);

  c.culture_size = 1;
  c.interests_per_agent = 1;
  RandomSource rng1(1);
  const Culture one = init_culture(c, rng1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_GT(one.popularity_weight[0], 0.0);
}

TEST(Culture, DeterministicPerSeed) {
  const ModelConfig c = test::small_config();
  RandomSource a(77), b(77);
  EXPECT_EQ(init_culture(c, a).popularity_weight, init_culture(c, b).popularity_weight);
}

TEST(Agents, InitialStateInvariants) {
  ModelConfig c = test::small_config();
  c.n_agents = 1000;
  RandomSource rng(3);
  const Culture culture = init_culture(c, rng);
  const auto agents = init_agents(c, culture, rng);
  ASSERT_EQ(agents.size(), 1000u);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const Agent& a = agents[i];
    EXPECT_EQ(a.id, i);
    ASSERT_EQ(a.interests.size(), static_cast<std::size_t>(c.interests_per_agent));
    EXPECT_TRUE(std::is_sorted(a.interests.begin(), a.interests.end()));
    EXPECT_EQ(std::set<TopicId>(a.interests.begin(), a.interests.end()).size(), a.interests.size());
    for (TopicId t : a.interests) EXPECT_LT(t, culture.size());
    for (double w : a.base_willingness) {
      EXPECT_GE(w, 0.0);
      EXPECT_LE(w, 1.0);
    }
    EXPECT_EQ(a.remaining_willingness, a.base_willingness);
    EXPECT_EQ(a.used_slots(), 0);
    EXPECT_EQ(a.free_days, all_days_mask(c.weekdays));
  }
}

TEST(Agents, FullCultureWhenInterestsEqualCultureSize) {
  ModelConfig c = test::small_config();
  c.interests_per_agent = c.culture_size;
  RandomSource rng(4);
  const Culture culture = init_culture(c, rng);
  for (const auto& a : init_agents(c, culture, rng)) EXPECT_EQ(a.interests, test::identity(culture.size()));
}

TEST(Agents, RejectsMoreInterestsThanTopics) {
  ModelConfig c = test::small_config();
  RandomSource rng(4);
  const Culture culture = init_culture(c, rng);
  c.interests_per_agent = c.culture_size + 1;
  EXPECT_THROW(init_agents(c, culture, rng), ConfigError);
}

TEST(Agents, TopicFrequencyTracksPopularity) {
  ModelConfig c = test::small_config();
  c.n_agents = 3000;
  c.culture_size = 40;
  c.interests_per_agent = 8;
  c.popularity_sd = 0.5;
  RandomSource rng(8);
  const Culture culture = init_culture(c, rng);
  const auto agents = init_agents(c, culture, rng);
  std::vector<double> freq(culture.size(), 0.0);
  for (const auto& a : agents) {
    for (TopicId t : a.interests) freq[t] += 1.0;
  }

  // Oracle: sequential weighted draws without replacement using the standard
  // library's discrete distribution and a different engine.
  std::mt19937 oracle_rng(12345);
  std::vector<double> expected(culture.size(), 0.0);
  for (int i = 0; i < 20000; ++i) {
    std::vector<double> w = culture.popularity_weight;
    for (int k = 0; k < c.interests_per_agent; ++k) {
      std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
      const std::size_t t = pick(oracle_rng);
      expected[t] += 1.0;
      w[t] = 0.0;
    }
  }

  const auto rho_weights = stats::pearson(ranks(freq), ranks(culture.popularity_weight));
  ASSERT_TRUE(rho_weights);
  EXPECT_GT(*rho_weights, 0.5);
  const auto r_oracle = stats::pearson(freq, expected);
  ASSERT_TRUE(r_oracle);
  EXPECT_GT(*r_oracle, 0.9);
}

TEST(Agents, PopulationDeterministicPerSeed) {
  const ModelConfig c = test::small_config();
  RandomSource r1(21), r2(21);
  const Culture c1 = init_culture(c, r1);
  const Culture c2 = init_culture(c, r2);
  const auto a1 = init_agents(c, c1, r1);
  const auto a2 = init_agents(c, c2, r2);
  ASSERT_EQ(a1.size(), a2.size());
  for (std::size_t i = 0; i < a1.size(); ++i) {
    EXPECT_EQ(a1[i].interests, a2[i].interests);
    EXPECT_EQ(a1[i].base_willingness, a2[i].base_willingness);
  }
}

TEST(ResetTurn, RestoresAndIsIdempotent) {
  std::vector<Agent> agents{test::make_agent(0, {{1, 0.5}, {2, 0.25}}, 3), test::make_agent(1, {{1, 0.75}}, 3)};
  agents[0].remaining_willingness[0] = 0.0;
  agents[0].schedule[1] = Slot{1, 1, 0.5};
  agents[0].free_days &= ~(std::uint64_t{1} << 1);
  agents[1].schedule[1] = Slot{0, 1, 0.5};
  agents[1].free_days &= ~(std::uint64_t{1} << 1);
  agents[1].remaining_willingness[0] = 0.25;

  reset_turn(agents);
  double pool = 0.0;
  for (const auto& a : agents) {
    EXPECT_EQ(a.remaining_willingness, a.base_willingness);
    EXPECT_EQ(a.used_slots(), 0);
    EXPECT_EQ(a.free_days, all_days_mask(3));
    for (double w : a.remaining_willingness) pool += w;
  }
  EXPECT_DOUBLE_EQ(pool, 0.5 + 0.25 + 0.75);

  const auto snapshot = agents;
  reset_turn(agents);
  for (std::size_t i = 0; i < agents.size(); ++i) {
    EXPECT_EQ(agents[i].remaining_willingness, snapshot[i].remaining_willingness);
    EXPECT_EQ(agents[i].free_days, snapshot[i].free_days);
  }
}

TEST(Agent, InterestIndexAndTotals) {
  const Agent a = test::make_agent(0, {{9, 0.5}, {2, 0.25}, {5, 1.0}}, 4);
  EXPECT_EQ(a.interests, (std::vector<TopicId>{2, 5, 9}));
  EXPECT_EQ(a.interest_index(5), std::optional<std::size_t>(1));
  EXPECT_FALSE(a.interest_index(3));
  EXPECT_DOUBLE_EQ(a.total_willingness(), 1.75);
  EXPECT_EQ(all_days_mask(64), ~std::uint64_t{0});
  EXPECT_EQ(all_days_mask(5), std::uint64_t{0x1f});
}
