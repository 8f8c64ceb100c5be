#include "stratsim/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "stratsim/kv_format.hpp"

namespace stratsim {

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<std::pair<std::string_view, Enum>, N>& table,
                std::string_view what) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  std::string msg = "unknown " + std::string(what) + " '" + std::string(text) + "' (expected one of:";
  for (const auto& [name, value] : table) msg += " " + std::string(name);
  throw ConfigError(msg + ")");
}

constexpr std::array<std::pair<std::string_view, Heuristic>, 2> kHeuristics{{
    {"simple", Heuristic::Simple},
    {"intelligent", Heuristic::Intelligent},
}};
constexpr std::array<std::pair<std::string_view, Ordering>, 3> kOrderings{{
    {"egalitarian", Ordering::Egalitarian},
    {"hierarchical", Ordering::Hierarchical},
    {"mobile", Ordering::Mobile},
}};
constexpr std::array<std::pair<std::string_view, StrengthUpdate>, 2> kStrengthUpdates{{
    {"linear", StrengthUpdate::Linear},
    {"logarithmic", StrengthUpdate::Logarithmic},
}};
constexpr std::array<std::pair<std::string_view, NeighborChoice>, 2> kNeighborChoices{{
    {"uniform", NeighborChoice::Uniform},
    {"preferential", NeighborChoice::Preferential},
}};

template <typename Enum, std::size_t N>
std::string_view enum_name(Enum v, const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, value] : table) {
    if (value == v) return name;
  }
  return "?";
}

int parse_int(std::string_view key, std::string_view text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("'" + std::string(key) + "': expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("'" + std::string(key) + "': expected an unsigned 64-bit integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError("'" + std::string(key) + "': expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

struct PresetDef {
  std::string_view name;
  StrengthUpdate kind;
  double increment;
  double decrement;
};

// Named strength bundles for sweep grids.
constexpr std::array<PresetDef, 3> kPresets{{
    {"1850", StrengthUpdate::Linear, 1.0, 0.1},
    {"5018", StrengthUpdate::Logarithmic, 1.0, 0.1},
    {"5050", StrengthUpdate::Linear, 1.0, 0.5},
}};

bool probability_ok(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view to_string(Heuristic h) { return enum_name(h, kHeuristics); }
std::string_view to_string(Ordering o) { return enum_name(o, kOrderings); }
std::string_view to_string(StrengthUpdate s) { return enum_name(s, kStrengthUpdates); }
std::string_view to_string(NeighborChoice c) { return enum_name(c, kNeighborChoices); }

Heuristic parse_heuristic(std::string_view s) { return parse_enum(s, kHeuristics, "heuristic"); }
Ordering parse_ordering(std::string_view s) { return parse_enum(s, kOrderings, "ordering"); }
StrengthUpdate parse_strength_update(std::string_view s) {
  return parse_enum(s, kStrengthUpdates, "strength_update");
}
NeighborChoice parse_neighbor_choice(std::string_view s) {
  return parse_enum(s, kNeighborChoices, "neighbor_choice");
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

StrengthPolicy relation_preset(std::string_view name, const StrengthPolicy& base) {
  for (const auto& p : kPresets) {
    if (p.name == name) {
      StrengthPolicy out = base;
      out.kind = p.kind;
      out.increment = p.increment;
      out.decrement = p.decrement;
      return out;
    }
  }
  throw ConfigError("unknown relation_preset '" + std::string(name) + "'");
}

std::vector<std::string> relation_preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "n_agents",         "culture_size",    "interests_per_agent", "weekdays",
      "initial_density",  "heuristic",       "simple_retries",      "ordering",
      "relation_preset",  "strength_update", "strength_increment",  "strength_decrement",
      "initial_strength", "max_strength",    "p_triad",             "p_random",
      "neighbor_choice",  "popularity_mean", "popularity_sd",       "steps",
      "seed",
  };
  return keys;
}

void set_config_value(ModelConfig& c, std::string_view key, std::string_view value) {
  if (key == "n_agents") {
    c.n_agents = parse_int(key, value);
  } else if (key == "culture_size") {
    c.culture_size = parse_int(key, value);
  } else if (key == "interests_per_agent") {
    c.interests_per_agent = parse_int(key, value);
  } else if (key == "weekdays") {
    c.weekdays = parse_int(key, value);
  } else if (key == "initial_density") {
    c.initial_density = parse_double(key, value);
  } else if (key == "heuristic") {
    c.heuristic = parse_heuristic(value);
  } else if (key == "simple_retries") {
    c.simple_retries = parse_int(key, value);
  } else if (key == "ordering") {
    c.ordering = parse_ordering(value);
  } else if (key == "relation_preset") {
    if (value == "none") {
      c.relation_preset.clear();
    } else {
      c.strength = relation_preset(value, c.strength);
      c.relation_preset = std::string(value);
    }
  } else if (key == "strength_update") {
    c.strength.kind = parse_strength_update(value);
  } else if (key == "strength_increment") {
    c.strength.increment = parse_double(key, value);
  } else if (key == "strength_decrement") {
    c.strength.decrement = parse_double(key, value);
  } else if (key == "initial_strength") {
    c.strength.initial_strength = parse_double(key, value);
  } else if (key == "max_strength") {
    c.strength.max_strength = parse_double(key, value);
  } else if (key == "p_triad") {
    c.creation.p_triad = parse_double(key, value);
  } else if (key == "p_random") {
    c.creation.p_random = parse_double(key, value);
  } else if (key == "neighbor_choice") {
    c.creation.neighbor_choice = parse_neighbor_choice(value);
  } else if (key == "popularity_mean") {
    c.popularity_mean = parse_double(key, value);
  } else if (key == "popularity_sd") {
    c.popularity_sd = parse_double(key, value);
  } else if (key == "steps") {
    c.steps = parse_int(key, value);
  } else if (key == "seed") {
    c.seed = parse_u64(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

std::vector<std::string> lint(const ModelConfig& c) {
  std::vector<std::string> issues;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) issues.push_back(msg);
  };
  require(c.n_agents > 0, "n_agents must be positive");
  require(c.culture_size > 0, "culture_size must be positive");
  require(c.interests_per_agent > 0, "interests_per_agent must be positive");
  require(c.interests_per_agent <= c.culture_size, "interests_per_agent must not exceed culture_size");
  require(c.weekdays > 0 && c.weekdays <= 64, "weekdays must be in [1, 64]");
  require(c.initial_density > 0.0 && c.initial_density < 1.0, "initial_density must be in (0, 1)");
  require(c.simple_retries > 0, "simple_retries must be positive");
  require(c.steps >= 0, "steps must be non-negative");
  require(probability_ok(c.creation.p_triad), "p_triad must be in [0, 1]");
  require(probability_ok(c.creation.p_random), "p_random must be in [0, 1]");
  require(c.strength.increment >= 0.0, "strength_increment must be non-negative");
  require(c.strength.decrement >= 0.0, "strength_decrement must be non-negative");
  require(c.strength.max_strength > 0.0, "max_strength must be positive");
  require(c.strength.initial_strength > 0.0 && c.strength.initial_strength <= c.strength.max_strength,
          "initial_strength must be in (0, max_strength]");
  require(c.popularity_sd >= 0.0, "popularity_sd must be non-negative");
  require(c.popularity_mean > 0.0 || c.popularity_sd > 0.0,
          "popularity distribution has no positive mass");
  require(c.seed.has_value(), "seed is mandatory");
  if (!c.relation_preset.empty()) {
    try {
      const StrengthPolicy expected = relation_preset(c.relation_preset, c.strength);
      require(expected == c.strength,
              "relation_preset '" + c.relation_preset + "' conflicts with explicit strength fields");
    } catch (const ConfigError& e) {
      issues.emplace_back(e.what());
    }
  }
  return issues;
}

void validate(const ModelConfig& config) {
  const auto issues = lint(config);
  if (issues.empty()) return;
  std::string msg = "invalid config:";
  for (const auto& i : issues) msg += "\n  " + i;
  throw ConfigError(msg);
}

std::string to_config_text(const ModelConfig& c) {
  std::ostringstream out;
  out << "n_agents = " << c.n_agents << '\n'
      << "culture_size = " << c.culture_size << '\n'
      << "interests_per_agent = " << c.interests_per_agent << '\n'
      << "weekdays = " << c.weekdays << '\n'
      << "initial_density = " << format_double(c.initial_density) << '\n'
      << "heuristic = " << to_string(c.heuristic) << '\n'
      << "simple_retries = " << c.simple_retries << '\n'
      << "ordering = " << to_string(c.ordering) << '\n'
      << "relation_preset = " << (c.relation_preset.empty() ? "none" : c.relation_preset) << '\n'
      << "strength_update = " << to_string(c.strength.kind) << '\n'
      << "strength_increment = " << format_double(c.strength.increment) << '\n'
      << "strength_decrement = " << format_double(c.strength.decrement) << '\n'
      << "initial_strength = " << format_double(c.strength.initial_strength) << '\n'
      << "max_strength = " << format_double(c.strength.max_strength) << '\n'
      << "p_triad = " << format_double(c.creation.p_triad) << '\n'
      << "p_random = " << format_double(c.creation.p_random) << '\n'
      << "neighbor_choice = " << to_string(c.creation.neighbor_choice) << '\n'
      << "popularity_mean = " << format_double(c.popularity_mean) << '\n'
      << "popularity_sd = " << format_double(c.popularity_sd) << '\n'
      << "steps = " << c.steps << '\n';
  if (c.seed) out << "seed = " << *c.seed << '\n';
  return out.str();
}

ModelConfig parse_config(std::string_view text) {
  const auto entries = parse_kv(text);
  ModelConfig c;
  // The preset is applied first so explicit strength fields override it
  // regardless of their position in the file.
  for (const auto& e : entries) {
    if (e.key != "relation_preset") continue;
    if (e.is_list) throw ConfigError("line " + std::to_string(e.line) + ": lists are not allowed in configs");
    set_config_value(c, e.key, e.values.front());
  }
  for (const auto& e : entries) {
    if (e.key == "relation_preset") continue;
    if (e.is_list) throw ConfigError("line " + std::to_string(e.line) + ": lists are not allowed in configs");
    try {
      set_config_value(c, e.key, e.values.front());
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
  return c;
}

ModelConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

}  // namespace stratsim
