#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratsim/config.hpp"
#include "stratsim/metrics.hpp"
#include "stratsim/model.hpp"
#include "stratsim/network.hpp"
#include "stratsim/random.hpp"
#include "stratsim/scheduling.hpp"
#include "stratsim/stratification.hpp"

namespace stratsim {

class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Simulation;

struct SimulationOptions {
  /// Verify model invariants after every turn; violations throw InvariantError.
  bool check_invariants = true;
  /// Keep per-agent vectors (order, used willingness) in the history.
  /// Scalar metrics are always kept.
  bool keep_agent_vectors = true;
  MeetingObserver on_meeting;
  /// Called after each turn, once the record has been appended.
  std::function<void(const Simulation&, const StepRecord&)> on_step;
};

/// One simulation run. Random draws happen in a fixed order: culture,
/// agents, graph, fixed hierarchy (hierarchical runs only), then per turn
/// the ordering, each agent's scheduling, and edge creation.
class Simulation {
 public:
  explicit Simulation(ModelConfig config, SimulationOptions options = {});

  /// Runs one turn and returns the record appended to the history.
  const StepRecord& step();

  int turn() const { return turn_; }
  const ModelConfig& config() const { return config_; }
  const Culture& culture() const { return culture_; }
  std::span<const Agent> agents() const { return agents_; }
  const SocialGraph& graph() const { return graph_; }
  const std::vector<StepRecord>& history() const { return history_; }
  std::vector<StepRecord> take_history() { return std::move(history_); }
  const std::vector<AgentId>& fixed_order() const { return fixed_order_; }

  /// Throws InvariantError on the first violated model invariant.
  void check_invariants(const StepRecord& record) const;

 private:
  ExecutionOrder next_order();

  ModelConfig config_;
  SimulationOptions options_;
  RandomSource rng_;
  Culture culture_;
  std::vector<Agent> agents_;
  SocialGraph graph_;
  std::vector<AgentId> fixed_order_;
  std::vector<AgentId> previous_order_;
  std::vector<StepRecord> history_;
  int turn_ = 0;
};

struct RunResult {
  ModelConfig config;
  std::vector<StepRecord> history;

  std::uint64_t seed() const { return config.seed.value_or(0); }
  std::string run_id() const;
};

/// Validates, initializes from the seed, and steps config.steps times.
RunResult run(const ModelConfig& config, SimulationOptions options = {});

/// Content hash of the canonical config text (includes the seed).
std::string run_id(const ModelConfig& config);

}  // namespace stratsim
