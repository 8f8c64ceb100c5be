#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "stratsim/config.hpp"
#include "stratsim/random.hpp"

namespace stratsim {

using AgentId = std::uint32_t;
using TopicId = std::uint32_t;

inline constexpr AgentId kNoAgent = std::numeric_limits<AgentId>::max();
inline constexpr int kMaxWeekdays = 64;

/// Topic ids are dense: 0 .. size()-1.
struct Culture {
  std::vector<double> popularity_weight;

  std::size_t size() const { return popularity_weight.size(); }
};

struct Slot {
  AgentId partner = kNoAgent;
  TopicId topic = 0;
  double consumed = 0.0;

  bool is_free() const { return partner == kNoAgent; }
};

struct Agent {
  AgentId id = 0;
  // Sorted ascending; the willingness vectors are parallel to it.
  std::vector<TopicId> interests;
  std::vector<double> base_willingness;
  std::vector<double> remaining_willingness;
  std::vector<Slot> schedule;
  // Bit d set <=> schedule[d] is free.
  std::uint64_t free_days = 0;

  std::optional<std::size_t> interest_index(TopicId topic) const;
  bool has_free_day() const { return free_days != 0; }
  int used_slots() const;
  /// Willingness consumed by this agent's meetings this turn.
  double used_willingness() const;
  /// Sum of base willingness over the interest set.
  double total_willingness() const;
};

Culture init_culture(const ModelConfig& config, RandomSource& rng);

/// Interests are drawn without replacement, proportional to topic popularity.
std::vector<Agent> init_agents(const ModelConfig& config, const Culture& culture, RandomSource& rng);

/// Frees every slot and restores willingness to base values.
void reset_turn(std::span<Agent> agents);

std::uint64_t all_days_mask(int weekdays);

}  // namespace stratsim
