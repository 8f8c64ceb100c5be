#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stratsim/config.hpp"
#include "stratsim/model.hpp"
#include "stratsim/random.hpp"

namespace stratsim {

class GraphError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Unordered agent pair, stored as (lo, hi).
struct EdgeKey {
  AgentId lo = 0;
  AgentId hi = 0;

  EdgeKey(AgentId a, AgentId b);
  auto operator<=>(const EdgeKey&) const = default;
};

struct EdgeState {
  double strength = 0.0;
  bool used_this_turn = false;
};

// Strengths at or below this are treated as zero after an update, so
// accumulated rounding error does not keep a decayed edge alive.
inline constexpr double kDeadStrength = 1e-9;

/// Undirected weighted acquaintance graph.
class SocialGraph {
 public:
  explicit SocialGraph(std::size_t n_nodes = 0);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::map<EdgeKey, EdgeState>& edges() const { return edges_; }

  bool has_edge(AgentId a, AgentId b) const;
  std::optional<double> strength(AgentId a, AgentId b) const;
  /// Sorted ascending.
  std::span<const AgentId> neighbors(AgentId a) const { return adjacency_.at(a); }
  std::size_t degree(AgentId a) const { return adjacency_.at(a).size(); }
  double weighted_degree(AgentId a) const;
  std::vector<double> weighted_degrees() const;
  double total_strength() const;

  void add_edge(AgentId a, AgentId b, double strength);

  /// Throws GraphError when the edge does not exist.
  void mark_used(AgentId a, AgentId b);
  bool is_used(AgentId a, AgentId b) const;
  std::size_t used_count() const;

  /// Raises used edges and decays unused ones, clamped to [0, max_strength];
  /// clears the used marks.
  void update_strengths(const StrengthPolicy& policy);

  /// Triadic closure then random meeting, per agent in id order. Returns the
  /// number of edges created.
  std::size_t create_edges(const CreationPolicy& policy, double initial_strength, RandomSource& rng);

  std::size_t remove_dead_edges();

  /// One draw from a non-empty candidate list: uniform, or proportional to
  /// unweighted degree (uniform again when every candidate is isolated).
  AgentId pick_candidate(std::span<const AgentId> candidates, NeighborChoice choice, RandomSource& rng) const;

  /// True when adjacency lists mirror the edge map exactly.
  bool is_consistent() const;

 private:
  void link(AgentId a, AgentId b);
  void unlink(AgentId a, AgentId b);
  void check_node(AgentId a) const;

  std::map<EdgeKey, EdgeState> edges_;
  std::vector<std::vector<AgentId>> adjacency_;
};

/// Erdos-Renyi G(n, p) with every edge at initial_strength.
SocialGraph init_network(std::size_t n_agents, double density, double initial_strength, RandomSource& rng);

/// Strength after one update of an edge, per policy.
double updated_strength(double strength, bool used, const StrengthPolicy& policy);

}  // namespace stratsim
