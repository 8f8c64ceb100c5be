#pragma once

#include <span>
#include <vector>

#include "stratsim/model.hpp"
#include "stratsim/network.hpp"
#include "stratsim/random.hpp"

namespace stratsim {

/// Execution order of one turn: a permutation of 0 .. n-1.
struct ExecutionOrder {
  int turn = 0;
  std::vector<AgentId> order;
};

/// Fresh uniformly random permutation.
ExecutionOrder order_egalitarian(std::size_t n_agents, RandomSource& rng, int turn = 0);

/// The same fixed permutation every turn.
ExecutionOrder order_hierarchical(std::span<const AgentId> fixed, int turn = 0);

/// Descending weighted degree, ties by ascending id.
ExecutionOrder order_mobile(const SocialGraph& graph, int turn = 0);

bool is_permutation_of_ids(std::span<const AgentId> order);

}  // namespace stratsim
