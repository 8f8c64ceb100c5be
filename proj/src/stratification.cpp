#include "stratsim/stratification.hpp"

#include <algorithm>
#include <numeric>

namespace stratsim {

ExecutionOrder order_egalitarian(std::size_t n_agents, RandomSource& rng, int turn) {
  ExecutionOrder out{turn, std::vector<AgentId>(n_agents)};
  std::iota(out.order.begin(), out.order.end(), AgentId{0});
  rng.shuffle(std::span<AgentId>(out.order));
  return out;
}

ExecutionOrder order_hierarchical(std::span<const AgentId> fixed, int turn) {
  return ExecutionOrder{turn, std::vector<AgentId>(fixed.begin(), fixed.end())};
}

ExecutionOrder order_mobile(const SocialGraph& graph, int turn) {
  const auto degrees = graph.weighted_degrees();
  ExecutionOrder out{turn, std::vector<AgentId>(graph.node_count())};
  std::iota(out.order.begin(), out.order.end(), AgentId{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](AgentId x, AgentId y) { return degrees[x] > degrees[y]; });
  return out;
}

bool is_permutation_of_ids(std::span<const AgentId> order) {
  std::vector<bool> seen(order.size(), false);
  for (AgentId a : order) {
    if (a >= order.size() || seen[a]) return false;
    seen[a] = true;
  }
  return true;
}

}  // namespace stratsim
