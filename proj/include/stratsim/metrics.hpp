#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stratsim/model.hpp"
#include "stratsim/network.hpp"

namespace stratsim {

enum class TauNormalization {
  /// 2 / (n (n - 1)): the fraction of discordant pairs, in [0, 1].
  Standard,
  /// 2 / (n (n - 2)). Exceeds 1 for fully reversed lists; needs n >= 3.
  NMinusTwo,
};

/// Snapshot taken after each turn.
struct StepRecord {
  int turn = 0;  // 1-based
  double schedule_usage = 0.0;
  double willingness_usage = 0.0;
  std::size_t meetings = 0;
  std::vector<AgentId> execution_order;
  /// Indexed by agent id.
  std::vector<double> per_agent_used_willingness;
  double network_density = 0.0;
  double avg_degree = 0.0;
  std::size_t edge_count = 0;
  /// Versus the previous turn's order; NaN / -1 on the first turn.
  double kendall_tau = 0.0;
  int top_k_intersection = -1;
  /// Mean used willingness of the first 10% executed agents, and of the rest.
  double first_decile_used = 0.0;
  double rest_used = 0.0;
};

/// Fraction of all slots booked this turn.
double schedule_usage(std::span<const Agent> agents, int weekdays);

/// Consumed over available willingness, summed over agents. A meeting counts
/// on both participants' side. 0 when no willingness exists.
double willingness_usage(std::span<const Agent> agents);

/// Number of discordant pairs. Both orders must hold the same distinct
/// elements; throws std::invalid_argument otherwise. O(n log n).
std::uint64_t kendall_tau_count(std::span<const AgentId> order1, std::span<const AgentId> order2);

/// Normalized Kendall tau distance. Requires n >= 2 (n >= 3 for NMinusTwo).
double kendall_tau(std::span<const AgentId> order1, std::span<const AgentId> order2,
                   TauNormalization normalization = TauNormalization::Standard);

/// |top_k(order1) ∩ top_k(order2)|. Throws when k exceeds either length.
int top_k_intersection(std::span<const AgentId> order1, std::span<const AgentId> order2, std::size_t k);

struct NetworkStats {
  double density = 0.0;
  double avg_degree = 0.0;
};

NetworkStats network_stats(const SocialGraph& graph, std::size_t n);

/// Size of the privileged group for n agents: 10%, at least 1.
std::size_t elite_size(std::size_t n);

}  // namespace stratsim
