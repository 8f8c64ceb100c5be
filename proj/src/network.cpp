#include "stratsim/network.hpp"

#include <algorithm>
#include <string>

namespace stratsim {

EdgeKey::EdgeKey(AgentId a, AgentId b) : lo(std::min(a, b)), hi(std::max(a, b)) {
  if (a == b) throw GraphError("self-loop on agent " + std::to_string(a));
}

SocialGraph::SocialGraph(std::size_t n_nodes) : adjacency_(n_nodes) {}

void SocialGraph::check_node(AgentId a) const {
  if (a >= adjacency_.size()) throw GraphError("agent " + std::to_string(a) + " out of range");
}

bool SocialGraph::has_edge(AgentId a, AgentId b) const {
  if (a == b) return false;
  return edges_.contains(EdgeKey(a, b));
}

std::optional<double> SocialGraph::strength(AgentId a, AgentId b) const {
  if (a == b) return std::nullopt;
  const auto it = edges_.find(EdgeKey(a, b));
  if (it == edges_.end()) return std::nullopt;
  return it->second.strength;
}

double SocialGraph::weighted_degree(AgentId a) const {
  check_node(a);
  double sum = 0.0;
  for (AgentId b : adjacency_[a]) sum += edges_.at(EdgeKey(a, b)).strength;
  return sum;
}

std::vector<double> SocialGraph::weighted_degrees() const {
  std::vector<double> out(adjacency_.size(), 0.0);
  for (std::size_t a = 0; a < adjacency_.size(); ++a) out[a] = weighted_degree(static_cast<AgentId>(a));
  return out;
}

double SocialGraph::total_strength() const {
  double sum = 0.0;
  for (const auto& [key, e] : edges_) sum += e.strength;
  return sum;
}

void SocialGraph::link(AgentId a, AgentId b) {
  auto& list = adjacency_[a];
  list.insert(std::lower_bound(list.begin(), list.end(), b), b);
}

void SocialGraph::unlink(AgentId a, AgentId b) {
  auto& list = adjacency_[a];
  const auto it = std::lower_bound(list.begin(), list.end(), b);
  if (it != list.end() && *it == b) list.erase(it);
}

void SocialGraph::add_edge(AgentId a, AgentId b, double strength) {
  check_node(a);
  check_node(b);
  if (!(strength > 0.0)) throw GraphError("edge strength must be positive");
  const EdgeKey key(a, b);
  if (!edges_.emplace(key, EdgeState{strength, false}).second) {
    throw GraphError("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") already exists");
  }
  link(a, b);
  link(b, a);
}

void SocialGraph::mark_used(AgentId a, AgentId b) {
  const auto it = a == b ? edges_.end() : edges_.find(EdgeKey(a, b));
  if (it == edges_.end()) {
    throw GraphError("mark_used on missing edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  it->second.used_this_turn = true;
}

bool SocialGraph::is_used(AgentId a, AgentId b) const {
  if (a == b) return false;
  const auto it = edges_.find(EdgeKey(a, b));
  return it != edges_.end() && it->second.used_this_turn;
}

std::size_t SocialGraph::used_count() const {
  return static_cast<std::size_t>(std::count_if(
      edges_.begin(), edges_.end(), [](const auto& kv) { return kv.second.used_this_turn; }));
}

double updated_strength(double strength, bool used, const StrengthPolicy& policy) {
  double scale = 1.0;
  if (policy.kind == StrengthUpdate::Logarithmic) scale = 1.0 / (1.0 + strength);
  double next = used ? strength + scale * policy.increment : strength - scale * policy.decrement;
  next = std::clamp(next, 0.0, policy.max_strength);
  if (next <= kDeadStrength) next = 0.0;
  return next;
}

void SocialGraph::update_strengths(const StrengthPolicy& policy) {
  for (auto& [key, e] : edges_) {
    e.strength = updated_strength(e.strength, e.used_this_turn, policy);
    e.used_this_turn = false;
  }
}

AgentId SocialGraph::pick_candidate(std::span<const AgentId> candidates, NeighborChoice choice,
                                    RandomSource& rng) const {
  if (choice == NeighborChoice::Preferential) {
    std::vector<double> weights;
    weights.reserve(candidates.size());
    double total = 0.0;
    for (AgentId c : candidates) {
      weights.push_back(static_cast<double>(adjacency_[c].size()));
      total += weights.back();
    }
    // All-isolated candidate sets fall back to a uniform draw.
    if (total > 0.0) return candidates[rng.weighted_index(weights)];
  }
  return candidates[static_cast<std::size_t>(rng.uniform_index(candidates.size()))];
}

std::size_t SocialGraph::create_edges(const CreationPolicy& policy, double initial_strength,
                                      RandomSource& rng) {
  const std::size_t n = adjacency_.size();
  std::size_t created = 0;
  std::vector<AgentId> candidates;
  std::vector<std::size_t> stamp(n, 0);
  std::size_t round = 0;

  for (std::size_t ai = 0; ai < n; ++ai) {
    const auto a = static_cast<AgentId>(ai);

    if (rng.bernoulli(policy.p_triad)) {
      ++round;
      stamp[a] = round;
      for (AgentId b : adjacency_[a]) stamp[b] = round;
      candidates.clear();
      for (AgentId b : adjacency_[a]) {
        for (AgentId c : adjacency_[b]) {
          if (stamp[c] == round) continue;
          stamp[c] = round;
          candidates.push_back(c);
        }
      }
      if (!candidates.empty()) {
        std::sort(candidates.begin(), candidates.end());
        add_edge(a, pick_candidate(candidates, policy.neighbor_choice, rng), initial_strength);
        ++created;
      }
    }

    if (rng.bernoulli(policy.p_random)) {
      candidates.clear();
      const auto& adj = adjacency_[a];
      auto it = adj.begin();
      for (std::size_t ci = 0; ci < n; ++ci) {
        const auto c = static_cast<AgentId>(ci);
        while (it != adj.end() && *it < c) ++it;
        if (c == a || (it != adj.end() && *it == c)) continue;
        candidates.push_back(c);
      }
      if (!candidates.empty()) {
        add_edge(a, pick_candidate(candidates, policy.neighbor_choice, rng), initial_strength);
        ++created;
      }
    }
  }
  return created;
}

std::size_t SocialGraph::remove_dead_edges() {
  std::size_t removed = 0;
  for (auto it = edges_.begin(); it != edges_.end();) {
    if (it->second.strength <= 0.0) {
      unlink(it->first.lo, it->first.hi);
      unlink(it->first.hi, it->first.lo);
      it = edges_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

bool SocialGraph::is_consistent() const {
  std::size_t half_edges = 0;
  for (std::size_t a = 0; a < adjacency_.size(); ++a) {
    const auto& list = adjacency_[a];
    if (!std::is_sorted(list.begin(), list.end())) return false;
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) return false;
    for (AgentId b : list) {
      if (b == a || !edges_.contains(EdgeKey(static_cast<AgentId>(a), b))) return false;
    }
    half_edges += list.size();
  }
  return half_edges == 2 * edges_.size();
}

SocialGraph init_network(std::size_t n_agents, double density, double initial_strength, RandomSource& rng) {
  if (!(density > 0.0 && density < 1.0)) throw ConfigError("density must be in (0, 1)");
  SocialGraph graph(n_agents);
  for (std::size_t a = 0; a < n_agents; ++a) {
    for (std::size_t b = a + 1; b < n_agents; ++b) {
      if (rng.bernoulli(density)) {
        graph.add_edge(static_cast<AgentId>(a), static_cast<AgentId>(b), initial_strength);
      }
    }
  }
  return graph;
}

}  // namespace stratsim
