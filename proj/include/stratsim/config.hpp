#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stratsim {

enum class Heuristic { Simple, Intelligent };
enum class Ordering { Egalitarian, Hierarchical, Mobile };
enum class StrengthUpdate { Linear, Logarithmic };
enum class NeighborChoice { Uniform, Preferential };

std::string_view to_string(Heuristic h);
std::string_view to_string(Ordering o);
std::string_view to_string(StrengthUpdate s);
std::string_view to_string(NeighborChoice c);

Heuristic parse_heuristic(std::string_view s);
Ordering parse_ordering(std::string_view s);
StrengthUpdate parse_strength_update(std::string_view s);
NeighborChoice parse_neighbor_choice(std::string_view s);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StrengthPolicy {
  StrengthUpdate kind = StrengthUpdate::Linear;
  double increment = 1.0;
  double decrement = 0.1;
  double initial_strength = 1.0;
  double max_strength = 10.0;

  bool operator==(const StrengthPolicy&) const = default;
};

struct CreationPolicy {
  double p_triad = 0.01;
  double p_random = 0.005;
  NeighborChoice neighbor_choice = NeighborChoice::Uniform;

  bool operator==(const CreationPolicy&) const = default;
};

struct ModelConfig {
  int n_agents = 1000;
  int culture_size = 250;
  int interests_per_agent = 20;
  int weekdays = 5;
  double initial_density = 0.002;
  Heuristic heuristic = Heuristic::Simple;
  int simple_retries = 10;
  Ordering ordering = Ordering::Egalitarian;
  // Empty when the strength fields were set individually.
  std::string relation_preset;
  StrengthPolicy strength;
  CreationPolicy creation;
  // Topic popularity weights ~ Normal(mean, sd), truncated to be positive.
  double popularity_mean = 1.0;
  double popularity_sd = 0.25;
  int steps = 1000;
  std::optional<std::uint64_t> seed;

  bool operator==(const ModelConfig&) const = default;
};

/// Named bundles of (update kind, increment, decrement) used to group sweep
/// cells. Throws ConfigError for unknown names.
StrengthPolicy relation_preset(std::string_view name, const StrengthPolicy& base = {});
std::vector<std::string> relation_preset_names();

/// Human-readable problems with the config; empty means valid.
std::vector<std::string> lint(const ModelConfig& config);
/// Throws ConfigError carrying every lint message.
void validate(const ModelConfig& config);

/// Canonical key = value text. Every key is written, in a fixed order, so the
/// text doubles as the content that run ids are hashed from.
std::string to_config_text(const ModelConfig& config);
ModelConfig parse_config(std::string_view text);
ModelConfig load_config(const std::string& path);

/// Sets one field from its textual form. Used by both config files and sweep
/// grids. Unknown keys throw ConfigError.
void set_config_value(ModelConfig& config, std::string_view key, std::string_view value);
const std::vector<std::string>& config_keys();

std::string format_double(double v);

}  // namespace stratsim
