#include "stratsim/scheduling.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace stratsim {

namespace {

void fail(const std::string& what, AgentId a, AgentId b) {
  throw SchedulingError("hold_meeting(" + std::to_string(a) + ", " + std::to_string(b) + "): " + what);
}

}  // namespace

int earliest_common_free_day(const Agent& a, const Agent& b) {
  const std::uint64_t common = a.free_days & b.free_days;
  if (common == 0) return -1;
  return std::countr_zero(common);
}

std::optional<TopicId> best_common_topic(const Agent& a, const Agent& b) {
  std::optional<TopicId> best;
  double best_value = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.interests.size() && j < b.interests.size()) {
    if (a.interests[i] < b.interests[j]) {
      ++i;
    } else if (b.interests[j] < a.interests[i]) {
      ++j;
    } else {
      const double value = std::min(a.remaining_willingness[i], b.remaining_willingness[j]);
      if (value > best_value) {
        best_value = value;
        best = a.interests[i];
      }
      ++i;
      ++j;
    }
  }
  return best;
}

Meeting hold_meeting(World& world, AgentId a, AgentId b, TopicId topic, int day) {
  if (a >= world.agents.size() || b >= world.agents.size()) fail("agent out of range", a, b);
  if (a == b) fail("agent cannot meet itself", a, b);
  if (!world.graph.has_edge(a, b)) fail("no edge between agents", a, b);
  Agent& agent_a = world.agents[a];
  Agent& agent_b = world.agents[b];
  if (day < 0 || day >= static_cast<int>(agent_a.schedule.size()) ||
      day >= static_cast<int>(agent_b.schedule.size())) {
    fail("day out of range", a, b);
  }
  const std::uint64_t bit = std::uint64_t{1} << day;
  if ((agent_a.free_days & bit) == 0 || (agent_b.free_days & bit) == 0) fail("day not free for both", a, b);
  const auto ia = agent_a.interest_index(topic);
  const auto ib = agent_b.interest_index(topic);
  if (!ia || !ib) fail("topic not shared", a, b);
  double& wa = agent_a.remaining_willingness[*ia];
  double& wb = agent_b.remaining_willingness[*ib];
  if (!(wa > 0.0) || !(wb > 0.0)) fail("no remaining willingness on topic", a, b);

  MeetingAudit audit;
  audit.a_before = wa;
  audit.b_before = wb;

  const double consumed = std::min(wa, wb);
  wa -= consumed;
  wb -= consumed;

  agent_a.schedule[static_cast<std::size_t>(day)] = Slot{b, topic, consumed};
  agent_b.schedule[static_cast<std::size_t>(day)] = Slot{a, topic, consumed};
  agent_a.free_days &= ~bit;
  agent_b.free_days &= ~bit;
  world.graph.mark_used(a, b);

  Meeting m{a, b, topic, day, day, consumed};
  if (world.observer && *world.observer) {
    audit.meeting = m;
    audit.a_after = wa;
    audit.b_after = wb;
    (*world.observer)(audit);
  }
  return m;
}

std::vector<Meeting> fill_schedule_simple(World& world, AgentId agent, int retries, RandomSource& rng) {
  std::vector<Meeting> meetings;
  const Agent& self = world.agents[agent];
  for (int attempt = 0; attempt < retries; ++attempt) {
    const auto neighbors = world.graph.neighbors(agent);
    if (neighbors.empty() || !self.has_free_day()) break;
    const AgentId partner = neighbors[static_cast<std::size_t>(rng.uniform_index(neighbors.size()))];
    const Agent& other = world.agents[partner];
    const int day = earliest_common_free_day(self, other);
    if (day < 0) continue;
    const auto topic = best_common_topic(self, other);
    if (!topic) continue;
    meetings.push_back(hold_meeting(world, agent, partner, *topic, day));
  }
  return meetings;
}

std::vector<Meeting> fill_schedule_intelligent(World& world, AgentId agent) {
  std::vector<Meeting> meetings;
  const Agent& self = world.agents[agent];
  std::vector<std::size_t> subjects(self.interests.size());
  std::iota(subjects.begin(), subjects.end(), std::size_t{0});
  // Interests are sorted by id, so a stable sort breaks ties by lowest topic.
  std::stable_sort(subjects.begin(), subjects.end(), [&](std::size_t x, std::size_t y) {
    return self.remaining_willingness[x] > self.remaining_willingness[y];
  });

  for (const std::size_t s : subjects) {
    if (!self.has_free_day()) break;
    const TopicId topic = self.interests[s];
    while (self.has_free_day() && self.remaining_willingness[s] > 0.0) {
      AgentId best = kNoAgent;
      double best_w = 0.0;
      for (const AgentId b : world.graph.neighbors(agent)) {
        const Agent& other = world.agents[b];
        if ((self.free_days & other.free_days) == 0) continue;
        const auto j = other.interest_index(topic);
        if (!j) continue;
        const double w = other.remaining_willingness[*j];
        if (w > best_w) {
          best_w = w;
          best = b;
        }
      }
      if (best == kNoAgent) break;
      meetings.push_back(
          hold_meeting(world, agent, best, topic, earliest_common_free_day(self, world.agents[best])));
    }
  }
  return meetings;
}

}  // namespace stratsim
