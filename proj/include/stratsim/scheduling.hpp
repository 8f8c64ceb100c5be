#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stratsim/model.hpp"
#include "stratsim/network.hpp"
#include "stratsim/random.hpp"

namespace stratsim {

/// Raised when a booking would violate a scheduling precondition. Always a
/// logic bug in the caller, never a normal outcome.
class SchedulingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Meeting {
  AgentId a = kNoAgent;
  AgentId b = kNoAgent;
  TopicId topic = 0;
  int slot_a = -1;
  int slot_b = -1;
  double consumed = 0.0;
};

/// Pre- and post-meeting willingness on the meeting's topic.
struct MeetingAudit {
  Meeting meeting;
  double a_before = 0.0;
  double b_before = 0.0;
  double a_after = 0.0;
  double b_after = 0.0;
};

using MeetingObserver = std::function<void(const MeetingAudit&)>;

/// Mutable view of the population and graph for one turn.
struct World {
  std::span<Agent> agents;
  SocialGraph& graph;
  const MeetingObserver* observer = nullptr;
};

/// Books `day` for both agents on `topic` and consumes
/// min(W_a, W_b) from each side. Marks the edge used.
Meeting hold_meeting(World& world, AgentId a, AgentId b, TopicId topic, int day);

/// Lowest index of a day free for both agents, or -1.
int earliest_common_free_day(const Agent& a, const Agent& b);

/// Shared topic maximizing min(W_a, W_b) over topics where both are
/// positive; ties go to the lowest topic id.
std::optional<TopicId> best_common_topic(const Agent& a, const Agent& b);

/// Up to `retries` attempts, each with a uniformly random neighbor.
std::vector<Meeting> fill_schedule_simple(World& world, AgentId agent, int retries, RandomSource& rng);

/// Subjects in descending willingness order (sorted once); for each, keep
/// booking the neighbor with the highest willingness on it.
std::vector<Meeting> fill_schedule_intelligent(World& world, AgentId agent);

}  // namespace stratsim
