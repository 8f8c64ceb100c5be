// stratsim: run single simulations, parameter sweeps, and the analyses over
// stored results.
//
//   stratsim run CONFIG --out DIR [--seed N] [--steps N] [--log-orders] [--log-edges]
//   stratsim sweep SPEC --out DIR [--jobs N] [--seed BASE] [--steps N] [--snapshot-steps LIST]
//   stratsim analyze DIR winners|correlation|decile|preferential|all [options]
//   stratsim validate FILE [--seed N]

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "stratsim/harness.hpp"
#include "stratsim/kv_format.hpp"

namespace fs = std::filesystem;
using namespace stratsim;

namespace {

constexpr const char* kSweepCopy = "sweep.txt";

std::vector<int> parse_step_list(const std::string& text) {
  std::vector<int> out;
  std::string s = text;
  if (!s.empty() && s.front() == '[') s.erase(0, 1);
  if (!s.empty() && s.back() == ']') s.pop_back();
  for (const auto& part : split(s, ',')) {
    const auto t = trim(part);
    if (t.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(std::string(t), &used);
    if (used != t.size() || v < 1) throw ConfigError("bad step '" + std::string(t) + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty step list");
  return out;
}

StepWindow parse_window(const std::string& text) {
  StepWindow w;
  if (text.empty() || text == "all") return w;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("window must be FIRST:LAST");
  w.first = std::stoi(text.substr(0, colon));
  const auto last = text.substr(colon + 1);
  w.last = last.empty() ? 0 : std::stoi(last);
  return w;
}

bool is_sweep_text(const std::string& text) {
  for (const auto& e : parse_kv(text)) {
    if (e.is_list || e.key == "seeds" || e.key == "seed_base" || e.key == "snapshot_steps") return true;
  }
  return false;
}

void write_report(const fs::path& dir, const std::string& name, const std::string& csv, const nlohmann::json& json) {
  fs::create_directories(dir);
  write_text_file((dir / (name + ".csv")).string(), csv);
  write_text_file((dir / (name + ".json")).string(), json.dump(2) + "\n");
  std::cout << "== " << name << " (" << (dir / (name + ".csv")).string() << ")\n" << csv;
}

struct RunArgs {
  std::string config;
  std::string out = "runs";
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  bool log_orders = false;
  bool log_edges = false;
  bool no_checks = false;
};

int cmd_run(const RunArgs& a) {
  ModelConfig config = load_config(a.config);
  if (a.seed) config.seed = *a.seed;
  if (a.steps) config.steps = *a.steps;
  validate(config);
  OutputOptions out;
  out.log_orders = a.log_orders;
  out.log_edges = a.log_edges;
  out.streaming = true;
  SimulationOptions sim;
  sim.check_invariants = !a.no_checks;
  const RunResult r = run_to_directory(config, a.out, out, sim);
  const auto& last = r.history.back();
  std::cout << "run " << r.run_id() << " -> " << (fs::path(a.out) / r.run_id()).string() << "\n"
            << "turns " << r.history.size() << ", final willingness_usage " << format_double(last.willingness_usage)
            << ", schedule_usage " << format_double(last.schedule_usage) << ", edges " << last.edge_count << "\n";
  return 0;
}

struct SweepArgs {
  std::string spec;
  std::string out = "results";
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  std::string snapshot_steps;
  bool log_orders = false;
  bool log_edges = false;
  bool no_checks = false;
};

int cmd_sweep(const SweepArgs& a) {
  const std::string text = read_text_file(a.spec);
  SweepSpec spec = parse_sweep_spec(text);
  if (a.seed) spec.seed_base = *a.seed;
  if (a.steps) spec.base.steps = *a.steps;
  if (!a.snapshot_steps.empty()) spec.snapshot_steps = parse_step_list(a.snapshot_steps);

  fs::create_directories(a.out);
  write_text_file((fs::path(a.out) / kSweepCopy).string(), to_sweep_text(spec));

  SweepOptions opt;
  opt.out_dir = a.out;
  opt.jobs = a.jobs;
  opt.output.log_orders = a.log_orders;
  opt.output.log_edges = a.log_edges;
  opt.simulation.check_invariants = !a.no_checks;
  opt.simulation.keep_agent_vectors = false;
  const std::size_t total = spec.expand().size();
  std::size_t done = 0;
  opt.on_run_done = [&](const std::string& id, bool computed) {
    ++done;
    std::fprintf(stderr, "[%zu/%zu] %s %s\n", done, total, id.c_str(), computed ? "done" : "reused");
  };
  std::cout << "sweep: " << spec.cell_count() << " cells, " << total << " runs\n";
  const SweepResult r = run_sweep(spec, opt);
  std::cout << "computed " << r.computed << ", reused " << r.reused << ", failed " << r.failures.size() << "\n";
  for (const auto& f : r.failures) std::cout << "  FAILED " << f.run_id << ": " << f.error << "\n";
  return r.failures.empty() ? 0 : 1;
}

struct AnalyzeArgs {
  std::string dir;
  std::string name;
  std::string report_dir;
  std::string snapshot_steps;
  std::string metric = "kendall_tau";
  std::string window;
  double alpha = 0.05;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const fs::path root(a.dir);
  const auto results = load_results(root);
  if (results.empty()) throw std::runtime_error("no complete runs under '" + a.dir + "'");
  const fs::path report_dir = a.report_dir.empty() ? root / "reports" : fs::path(a.report_dir);

  std::vector<int> steps = SweepSpec{}.snapshot_steps;
  if (!a.snapshot_steps.empty()) {
    steps = parse_step_list(a.snapshot_steps);
  } else if (fs::exists(root / kSweepCopy)) {
    steps = parse_sweep_spec(read_text_file((root / kSweepCopy).string())).snapshot_steps;
  }
  const StepWindow window = parse_window(a.window);
  const bool all = a.name == "all";
  bool known = false;

  if (all || a.name == "winners") {
    known = true;
    const auto t = winner_table(results, steps);
    write_report(report_dir, "winners", to_csv(t), to_json(t));
    for (const auto& e : t.excluded) std::cout << "  excluded: " << e << "\n";
  }
  if (all || a.name == "correlation") {
    known = true;
    std::vector<SeriesMetric> metrics;
    if (all) {
      metrics = {SeriesMetric::KendallTau, SeriesMetric::TopKIntersection};
    } else {
      metrics = {parse_series_metric(a.metric)};
    }
    for (const auto m : metrics) {
      const auto r = correlation_bins(results, m, window);
      write_report(report_dir, "correlation_" + std::string(to_string(m)), to_csv(r), to_json(r));
    }
  }
  if (all || a.name == "decile") {
    known = true;
    const auto rows = decile_advantage(results);
    write_report(report_dir, "decile", to_csv(rows), to_json(rows));
  }
  if (all || a.name == "preferential") {
    known = true;
    const auto r = preferential_comparison(results, a.alpha);
    write_report(report_dir, "preferential", to_csv(r), to_json(r));
    std::cout << "  preferential lower in " << format_double(r.percent_lower) << "% of pairs ("
              << format_double(r.percent_lower_significant) << "% significant at per-pair p < "
              << format_double(r.threshold) << ")\n";
    for (const auto& u : r.unmatched) std::cout << "  unmatched: " << u << "\n";
  }
  if (!known) throw ConfigError("unknown analysis '" + a.name + "'");
  return 0;
}

int cmd_validate(const std::string& path, std::optional<std::uint64_t> seed) {
  const std::string text = read_text_file(path);
  if (is_sweep_text(text)) {
    const SweepSpec spec = parse_sweep_spec(text);
    std::cout << path << ": valid sweep, " << spec.cell_count() << " cells, " << spec.expand().size() << " runs\n";
    return 0;
  }
  ModelConfig config = parse_config(text);
  if (seed) config.seed = *seed;
  const auto problems = lint(config);
  if (problems.empty()) {
    std::cout << path << ": valid, run id " << run_id(config) << "\n";
    return 0;
  }
  for (const auto& p : problems) std::cout << path << ": " << p << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stratification simulation of scheduling on an evolving social network"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run one config and write its results");
  run_cmd->add_option("config", run_args.config, "Config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run_args.out, "Results root; the run goes to DIR/<run id>")->capture_default_str();
  run_cmd->add_option("--seed", run_args.seed, "Override the config seed");
  run_cmd->add_option("--steps", run_args.steps, "Override the number of turns")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--log-orders", run_args.log_orders, "Write orders.csv");
  run_cmd->add_flag("--log-edges", run_args.log_edges, "Write the edge list after every turn");
  run_cmd->add_flag("--no-checks", run_args.no_checks, "Skip per-turn invariant checks");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run every cell of a sweep file");
  sweep_cmd->add_option("spec", sweep_args.spec, "Sweep file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep_args.out, "Results directory")->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_args.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep_args.seed, "Override seed_base");
  sweep_cmd->add_option("--steps", sweep_args.steps, "Override the number of turns")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--snapshot-steps", sweep_args.snapshot_steps, "Comma-separated steps for winner tables");
  sweep_cmd->add_flag("--log-orders", sweep_args.log_orders, "Write orders.csv per run");
  sweep_cmd->add_flag("--log-edges", sweep_args.log_edges, "Write edge lists per run and turn");
  sweep_cmd->add_flag("--no-checks", sweep_args.no_checks, "Skip per-turn invariant checks");

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute a report from a results directory");
  analyze_cmd->add_option("dir", analyze_args.dir, "Results directory")->required()->check(CLI::ExistingDirectory);
  analyze_cmd->add_option("analysis", analyze_args.name, "winners, correlation, decile, preferential or all")
      ->required();
  analyze_cmd->add_option("--out", analyze_args.report_dir, "Report directory (default DIR/reports)");
  analyze_cmd->add_option("--snapshot-steps", analyze_args.snapshot_steps, "Comma-separated steps for winners");
  analyze_cmd->add_option("--metric", analyze_args.metric, "kendall_tau or top_k_intersection")
      ->capture_default_str();
  analyze_cmd->add_option("--window", analyze_args.window, "Turn range FIRST:LAST for correlations (default all)");
  analyze_cmd->add_option("--alpha", analyze_args.alpha, "Family-wise significance level")->capture_default_str();

  std::string validate_path;
  std::optional<std::uint64_t> validate_seed;
  auto* validate_cmd = app.add_subcommand("validate", "Lint a config or sweep file");
  validate_cmd->add_option("file", validate_path, "Config or sweep file")->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--seed", validate_seed, "Seed to assume when the file has none");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run_args);
    if (*sweep_cmd) return cmd_sweep(sweep_args);
    if (*analyze_cmd) return cmd_analyze(analyze_args);
    if (*validate_cmd) return cmd_validate(validate_path, validate_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
