#include "stratsim/model.hpp"

#include <algorithm>
#include <numeric>

namespace stratsim {

namespace {
constexpr double kMinPopularity = 1e-6;
}

std::optional<std::size_t> Agent::interest_index(TopicId topic) const {
  const auto it = std::lower_bound(interests.begin(), interests.end(), topic);
  if (it == interests.end() || *it != topic) return std::nullopt;
  return static_cast<std::size_t>(it - interests.begin());
}

int Agent::used_slots() const {
  return static_cast<int>(std::count_if(schedule.begin(), schedule.end(),
                                        [](const Slot& s) { return !s.is_free(); }));
}

double Agent::used_willingness() const {
  double sum = 0.0;
  for (const auto& s : schedule) {
    if (!s.is_free()) sum += s.consumed;
  }
  return sum;
}

double Agent::total_willingness() const {
  return std::accumulate(base_willingness.begin(), base_willingness.end(), 0.0);
}

std::uint64_t all_days_mask(int weekdays) {
  if (weekdays >= 64) return ~std::uint64_t{0};
  return (std::uint64_t{1} << weekdays) - 1;
}

Culture init_culture(const ModelConfig& config, RandomSource& rng) {
  if (config.culture_size <= 0) throw ConfigError("culture_size must be positive");
  Culture culture;
  culture.popularity_weight.reserve(static_cast<std::size_t>(config.culture_size));
  for (int t = 0; t < config.culture_size; ++t) {
    double w = 0.0;
    // Rejection keeps the draw a truncated normal; the floor only matters
    // for degenerate (mean <= 0, tiny sd) settings.
    for (int attempt = 0; attempt < 1000 && w < kMinPopularity; ++attempt) {
      w = rng.normal(config.popularity_mean, config.popularity_sd);
    }
    culture.popularity_weight.push_back(std::max(w, kMinPopularity));
  }
  return culture;
}

std::vector<Agent> init_agents(const ModelConfig& config, const Culture& culture, RandomSource& rng) {
  if (config.interests_per_agent > static_cast<int>(culture.size())) {
    throw ConfigError("interests_per_agent exceeds culture size");
  }
  if (config.weekdays <= 0 || config.weekdays > kMaxWeekdays) {
    throw ConfigError("weekdays must be in [1, 64]");
  }
  const auto k = static_cast<std::size_t>(config.interests_per_agent);
  std::vector<Agent> agents(static_cast<std::size_t>(config.n_agents));
  std::vector<double> weights;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    Agent& a = agents[i];
    a.id = static_cast<AgentId>(i);

    weights = culture.popularity_weight;
    a.interests.reserve(k);
    for (std::size_t draw = 0; draw < k; ++draw) {
      const std::size_t topic = rng.weighted_index(weights);
      a.interests.push_back(static_cast<TopicId>(topic));
      weights[topic] = 0.0;
    }
    // Willingness is drawn in draw order, then reordered alongside the sorted
    // interest ids.
    std::vector<std::pair<TopicId, double>> drawn;
    drawn.reserve(k);
    for (TopicId t : a.interests) drawn.emplace_back(t, rng.uniform01());
    std::sort(drawn.begin(), drawn.end());
    for (std::size_t j = 0; j < k; ++j) a.interests[j] = drawn[j].first;

    a.base_willingness.resize(k);
    for (std::size_t j = 0; j < k; ++j) a.base_willingness[j] = drawn[j].second;
    a.remaining_willingness = a.base_willingness;
    a.schedule.assign(static_cast<std::size_t>(config.weekdays), Slot{});
    a.free_days = all_days_mask(config.weekdays);
  }
  return agents;
}

void reset_turn(std::span<Agent> agents) {
  for (auto& a : agents) {
    std::fill(a.schedule.begin(), a.schedule.end(), Slot{});
    a.free_days = all_days_mask(static_cast<int>(a.schedule.size()));
    a.remaining_willingness = a.base_willingness;
  }
}

}  // namespace stratsim
