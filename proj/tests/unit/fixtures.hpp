#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "stratsim/config.hpp"
#include "stratsim/model.hpp"
#include "stratsim/network.hpp"
#include "stratsim/random.hpp"

namespace stratsim::test {

inline Agent make_agent(AgentId id, std::vector<std::pair<TopicId, double>> topics, int weekdays) {
  std::sort(topics.begin(), topics.end());
  Agent a;
  a.id = id;
  for (const auto& [t, w] : topics) {
    a.interests.push_back(t);
    a.base_willingness.push_back(w);
    a.remaining_willingness.push_back(w);
  }
  a.schedule.assign(static_cast<std::size_t>(weekdays), Slot{});
  a.free_days = all_days_mask(weekdays);
  return a;
}

inline ModelConfig small_config(std::uint64_t seed = 1) {
  ModelConfig c;
  c.n_agents = 40;
  c.culture_size = 30;
  c.interests_per_agent = 6;
  c.weekdays = 5;
  c.initial_density = 0.08;
  c.steps = 60;
  c.creation.p_triad = 0.05;
  c.creation.p_random = 0.03;
  c.seed = seed;
  return c;
}

/// Discordant pairs by direct O(n^2) comparison of positions.
inline std::uint64_t brute_force_discordant(const std::vector<AgentId>& a, const std::vector<AgentId>& b) {
  std::vector<std::size_t> pos_b(*std::max_element(b.begin(), b.end()) + 1);
  for (std::size_t i = 0; i < b.size(); ++i) pos_b[b[i]] = i;
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (pos_b[a[i]] > pos_b[a[j]]) ++d;
    }
  }
  return d;
}

inline std::vector<AgentId> identity(std::size_t n) {
  std::vector<AgentId> v(n);
  std::iota(v.begin(), v.end(), AgentId{0});
  return v;
}

inline std::vector<AgentId> random_permutation(std::size_t n, RandomSource& rng) {
  auto v = identity(n);
  rng.shuffle(std::span<AgentId>(v));
  return v;
}

/// Upper 0.001 critical values of the chi-square distribution.
inline double chi2_crit_001(int dof) {
  switch (dof) {
    case 8: return 26.124;
    case 9: return 27.877;
    case 23: return 49.728;
    default: return 0.0;
  }
}

}  // namespace stratsim::test
