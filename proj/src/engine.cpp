#include "stratsim/engine.hpp"

#include <array>
#include <cmath>
#include <string>

namespace stratsim {

namespace {

void require(bool ok, int turn, const char* what) {
  if (!ok) throw InvariantError("turn " + std::to_string(turn) + ": " + what);
}

}  // namespace

Simulation::Simulation(ModelConfig config, SimulationOptions options)
    : config_(std::move(config)), options_(std::move(options)), rng_(0) {
  validate(config_);
  rng_ = RandomSource(*config_.seed);
  culture_ = init_culture(config_, rng_);
  agents_ = init_agents(config_, culture_, rng_);
  graph_ = init_network(agents_.size(), config_.initial_density, config_.strength.initial_strength, rng_);
  if (config_.ordering == Ordering::Hierarchical) {
    fixed_order_ = order_egalitarian(agents_.size(), rng_).order;
  }
}

ExecutionOrder Simulation::next_order() {
  switch (config_.ordering) {
    case Ordering::Egalitarian:
      return order_egalitarian(agents_.size(), rng_, turn_ + 1);
    case Ordering::Hierarchical:
      return order_hierarchical(fixed_order_, turn_ + 1);
    case Ordering::Mobile:
      return order_mobile(graph_, turn_ + 1);
  }
  throw InvariantError("unknown ordering");
}

const StepRecord& Simulation::step() {
  reset_turn(agents_);
  ExecutionOrder order = next_order();

  World world{agents_, graph_, options_.on_meeting ? &options_.on_meeting : nullptr};
  std::size_t meetings = 0;
  for (const AgentId a : order.order) {
    if (config_.heuristic == Heuristic::Simple) {
      meetings += fill_schedule_simple(world, a, config_.simple_retries, rng_).size();
    } else {
      meetings += fill_schedule_intelligent(world, a).size();
    }
  }

  StepRecord rec;
  rec.turn = turn_ + 1;
  rec.meetings = meetings;
  rec.schedule_usage = schedule_usage(agents_, config_.weekdays);
  rec.willingness_usage = willingness_usage(agents_);

  // Checked before evolution clears the used marks.
  if (options_.check_invariants) check_invariants(rec);

  graph_.update_strengths(config_.strength);
  graph_.create_edges(config_.creation, config_.strength.initial_strength, rng_);
  graph_.remove_dead_edges();

  const auto stats = network_stats(graph_, agents_.size());
  rec.network_density = stats.density;
  rec.avg_degree = stats.avg_degree;
  rec.edge_count = graph_.edge_count();

  const std::size_t k = elite_size(agents_.size());
  if (previous_order_.empty() || order.order.size() < 2) {
    rec.kendall_tau = std::nan("");
    rec.top_k_intersection = -1;
  } else {
    rec.kendall_tau = kendall_tau(previous_order_, order.order);
    rec.top_k_intersection = top_k_intersection(previous_order_, order.order, k);
  }

  std::vector<double> used(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) used[i] = agents_[i].used_willingness();
  double first = 0.0;
  double rest = 0.0;
  for (std::size_t p = 0; p < order.order.size(); ++p) {
    (p < k ? first : rest) += used[order.order[p]];
  }
  rec.first_decile_used = first / static_cast<double>(k);
  rec.rest_used = order.order.size() > k ? rest / static_cast<double>(order.order.size() - k) : 0.0;

  if (options_.check_invariants) {
    require(is_permutation_of_ids(order.order), rec.turn, "execution order is not a permutation");
    require(std::isnan(rec.kendall_tau) || (rec.kendall_tau >= 0.0 && rec.kendall_tau <= 1.0), rec.turn,
            "kendall tau outside [0, 1]");
    require(rec.top_k_intersection <= static_cast<int>(k) &&
                (rec.top_k_intersection >= 0 || std::isnan(rec.kendall_tau)),
            rec.turn, "intersection outside [0, k]");
    require(graph_.is_consistent(), rec.turn, "adjacency index out of sync with edge map");
    for (const auto& [key, e] : graph_.edges()) {
      require(e.strength > 0.0 && e.strength <= config_.strength.max_strength, rec.turn,
              "edge strength outside (0, max_strength]");
    }
  }

  previous_order_ = order.order;
  if (options_.keep_agent_vectors) {
    rec.execution_order = std::move(order.order);
    rec.per_agent_used_willingness = std::move(used);
  }
  ++turn_;
  history_.push_back(std::move(rec));
  if (options_.on_step) options_.on_step(*this, history_.back());
  return history_.back();
}

void Simulation::check_invariants(const StepRecord& rec) const {
  const int t = rec.turn;
  require(rec.schedule_usage >= 0.0 && rec.schedule_usage <= 1.0, t, "schedule usage outside [0, 1]");
  require(rec.willingness_usage >= 0.0 && rec.willingness_usage <= 1.0, t,
          "willingness usage outside [0, 1]");
  std::size_t booked = 0;
  for (const Agent& a : agents_) {
    for (std::size_t j = 0; j < a.interests.size(); ++j) {
      const double base = a.base_willingness[j];
      const double rem = a.remaining_willingness[j];
      if (!(rem >= 0.0 && rem <= base && base <= 1.0)) {
        throw InvariantError("turn " + std::to_string(t) + ": willingness bounds violated for agent " +
                             std::to_string(a.id));
      }
    }
    for (std::size_t d = 0; d < a.schedule.size(); ++d) {
      const Slot& s = a.schedule[d];
      const bool free_bit = ((a.free_days >> d) & 1U) != 0;
      require(free_bit == s.is_free(), t, "free-day mask out of sync");
      if (s.is_free()) continue;
      ++booked;
      require(s.partner < agents_.size(), t, "slot partner out of range");
      const Slot& mirror = agents_[s.partner].schedule[d];
      require(mirror.partner == a.id && mirror.topic == s.topic && mirror.consumed == s.consumed, t,
              "meeting not mirrored in partner's schedule");
      require(graph_.is_used(a.id, s.partner), t, "meeting along an unmarked or missing edge");
      require(a.interest_index(s.topic).has_value(), t, "meeting topic outside interest set");
      require(s.consumed > 0.0, t, "meeting consumed no willingness");
    }
  }
  require(booked % 2 == 0 && booked / 2 <= agents_.size() * static_cast<std::size_t>(config_.weekdays) / 2, t,
          "meeting count exceeds slot capacity");
}

std::string run_id(const ModelConfig& config) {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : to_config_text(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr std::array<char, 16> kHex{'0', '1', '2', '3', '4', '5', '6', '7',
                                             '8', '9', 'a', 'b', 'c', 'd', 'e', 'f'};
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::string RunResult::run_id() const { return stratsim::run_id(config); }

RunResult run(const ModelConfig& config, SimulationOptions options) {
  validate(config);
  Simulation sim(config, std::move(options));
  for (int s = 0; s < config.steps; ++s) sim.step();
  return RunResult{config, sim.take_history()};
}

}  // namespace stratsim
