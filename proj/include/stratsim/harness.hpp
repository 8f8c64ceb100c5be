#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stratsim/engine.hpp"
#include "stratsim/run_io.hpp"

namespace stratsim {

// ---------------------------------------------------------------------------
// Sweeps

/// Parameter grid. Sweep files use the config syntax; a list value makes the
/// key a grid axis:
///
///   n_agents = 200
///   weekdays = [5, 15, 25]
///   ordering = [egalitarian, hierarchical, mobile]
///   seeds = 5            # runs per (cell, ordering)
///   seed_base = 1        # seeds are seed_base, seed_base + 1, ...
///   snapshot_steps = [200, 250, 300, 500, 1000]
///
/// A cell is one combination of the non-ordering axes; every cell is run
/// under each listed ordering.
struct SweepSpec {
  ModelConfig base;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  int seeds_per_cell = 1;
  std::uint64_t seed_base = 1;
  std::vector<int> snapshot_steps{200, 250, 300, 500, 1000};

  std::size_t cell_count() const;
  /// Every run config, cells in axis order, then ordering, then seed.
  std::vector<ModelConfig> expand() const;
};

SweepSpec parse_sweep_spec(std::string_view text);
SweepSpec load_sweep_spec(const std::string& path);
/// Canonical sweep file; parse_sweep_spec(to_sweep_text(s)) expands like s.
std::string to_sweep_text(const SweepSpec& spec);

struct SweepOptions {
  /// Empty: keep results in memory only.
  std::filesystem::path out_dir;
  int jobs = 1;
  OutputOptions output;
  SimulationOptions simulation;
  std::function<void(const std::string& run_id, bool computed)> on_run_done;
};

struct SweepFailure {
  std::string run_id;
  std::string error;
};

struct SweepResult {
  /// Sorted by run id.
  std::vector<RunResult> runs;
  std::size_t computed = 0;
  std::size_t reused = 0;
  std::vector<SweepFailure> failures;
};

/// Runs every (cell, ordering, seed). With an output directory, runs already
/// on disk are loaded instead of recomputed.
SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options);

// ---------------------------------------------------------------------------
// Analyses. All are pure functions of run results.

/// Config text without ordering and seed: runs sharing it form one cell.
std::string cell_key(const ModelConfig& config);

inline constexpr std::array<Ordering, 3> kAllOrderings{Ordering::Egalitarian, Ordering::Hierarchical,
                                                       Ordering::Mobile};

struct WinnerRow {
  std::string group;  // "all" or a heuristic name
  int step = 0;
  std::size_t cells = 0;
  std::array<std::size_t, 3> wins{};  // indexed like kAllOrderings
  std::size_t ties = 0;

  double percent(std::size_t count) const;
};

struct WinnerTable {
  std::vector<WinnerRow> rows;
  /// Cells lacking an ordering or too short for a step.
  std::vector<std::string> excluded;
};

/// Per step, the share of cells in which each ordering has the highest mean
/// willingness usage across seeds. Exact ties credit no ordering.
WinnerTable winner_table(std::span<const RunResult> results, std::span<const int> steps);

enum class SeriesMetric { KendallTau, TopKIntersection };

std::string_view to_string(SeriesMetric m);
SeriesMetric parse_series_metric(std::string_view s);

/// Inclusive, 1-based turn range.
struct StepWindow {
  int first = 1;
  int last = 0;
};

enum class CorrelationBin { Negative, Neutral, Positive };

/// (-1, -0.1) negative, [-0.1, 0.1] neutral, (0.1, 1] positive. Undefined
/// correlations (constant series) are neutral.
CorrelationBin correlation_bin(std::optional<double> r);

/// Pearson correlation of the metric against the turn number inside the
/// window; nullopt when undefined. Windows shorter than 3 turns throw.
std::optional<double> series_correlation(const RunResult& run, SeriesMetric metric, StepWindow window);

struct BinRow {
  std::string parameter;  // "all" for the overall row
  std::string value;
  std::size_t runs = 0;
  std::array<std::size_t, 3> counts{};  // negative, neutral, positive

  double percent(CorrelationBin b) const;
};

struct RunCorrelation {
  std::string run_id;
  std::optional<double> r;
};

struct CorrelationReport {
  SeriesMetric metric = SeriesMetric::KendallTau;
  StepWindow window;
  std::vector<BinRow> rows;
  std::vector<RunCorrelation> per_run;
};

/// Bins every Mobile run, overall and per value of each parameter that
/// varies across those runs.
CorrelationReport correlation_bins(std::span<const RunResult> results, SeriesMetric metric, StepWindow window);

/// Percent by which the first-executed 10% out-use the remaining 90%, for
/// one run, over all turns. nullopt when the rest used nothing.
std::optional<double> run_uplift(const RunResult& run);

struct DecileRow {
  Ordering ordering = Ordering::Egalitarian;
  std::size_t runs = 0;
  double mean_uplift_percent = 0.0;
  double min_uplift_percent = 0.0;
};

std::vector<DecileRow> decile_advantage(std::span<const RunResult> results);

/// Mean Kendall tau distance over the run's defined turns.
double mean_kendall_tau(const RunResult& run);

struct PreferentialPair {
  std::string cell;  // cell key without neighbor_choice
  std::size_t n_preferential = 0;
  std::size_t n_uniform = 0;
  double mean_preferential = 0.0;
  double mean_uniform = 0.0;
  double t = 0.0;
  double p_value = 1.0;
  bool preferential_lower = false;
  bool significant = false;
};

struct PreferentialReport {
  double alpha = 0.05;
  /// Bonferroni-corrected per-pair threshold.
  double threshold = 0.05;
  std::vector<PreferentialPair> pairs;
  std::vector<std::string> unmatched;
  double mean_preferential = 0.0;
  double mean_uniform = 0.0;
  double percent_lower = 0.0;
  double percent_lower_significant = 0.0;
};

/// Mobile runs only: cells differing only in neighbor_choice are compared by
/// Welch t-test across seeds, Bonferroni-corrected over pairs.
PreferentialReport preferential_comparison(std::span<const RunResult> results, double alpha = 0.05);

// Report serialization: CSV with a header row, plus a JSON mirror.
std::string to_csv(const WinnerTable& t);
std::string to_csv(const CorrelationReport& r);
std::string to_csv(std::span<const DecileRow> rows);
std::string to_csv(const PreferentialReport& r);
nlohmann::json to_json(const WinnerTable& t);
nlohmann::json to_json(const CorrelationReport& r);
nlohmann::json to_json(std::span<const DecileRow> rows);
nlohmann::json to_json(const PreferentialReport& r);

}  // namespace stratsim
