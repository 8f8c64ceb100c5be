#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stratsim/engine.hpp"

namespace stratsim {

// On-disk layout of one run, under <root>/<run_id>/:
//
//   config.txt         canonical key = value config (seed included)
//   metrics.csv        one row per turn, header kMetricsHeader
//   orders.csv         turn,order   (order = space-separated agent ids)
//   edges/step_NNNNNN.csv   node_a,node_b,strength after each turn
//
// orders.csv and edges/ only exist when requested. metrics.csv is written
// last; its presence marks the run complete.

inline constexpr std::string_view kMetricsHeader =
    "turn,schedule_usage,willingness_usage,meetings,edge_count,network_density,avg_degree,"
    "kendall_tau,top_k_intersection,first_decile_used,rest_used";

struct OutputOptions {
  bool log_orders = false;
  bool log_edges = false;
  /// Append metrics rows during the run instead of once at the end.
  bool streaming = false;
};

std::string metrics_csv_row(const StepRecord& record);
std::string to_metrics_csv(std::span<const StepRecord> history);
/// Scalar fields only; per-agent vectors stay empty.
std::vector<StepRecord> parse_metrics_csv(std::string_view text);

std::string to_orders_csv(std::span<const StepRecord> history);
/// Fills execution_order of matching turns in `history`.
void apply_orders_csv(std::string_view text, std::vector<StepRecord>& history);

std::string to_edges_csv(const SocialGraph& graph);

bool run_complete(const std::filesystem::path& run_dir);

void write_run(const std::filesystem::path& run_dir, const RunResult& result, const OutputOptions& options);
RunResult read_run(const std::filesystem::path& run_dir);

/// Runs `config` and writes it to <root>/<run_id>/. Edge dumps require the
/// live graph, so they are written during the run.
RunResult run_to_directory(const ModelConfig& config, const std::filesystem::path& root,
                           const OutputOptions& options, SimulationOptions sim_options = {});

/// Every complete run under `root`, sorted by run id.
std::vector<RunResult> load_results(const std::filesystem::path& root);

}  // namespace stratsim
