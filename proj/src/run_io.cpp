#include "stratsim/run_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stratsim/kv_format.hpp"

namespace stratsim {

namespace fs = std::filesystem;

namespace {

std::string number_or_empty(double v) { return std::isnan(v) ? std::string() : format_double(v); }

double parse_field_double(std::string_view s, int line) {
  if (s.empty()) return std::nan("");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("metrics.csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

long long parse_field_int(std::string_view s, int line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("line " + std::to_string(line) + ": bad integer '" + std::string(s) + "'");
  }
  return v;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!line.empty()) fn(line, line_no);
    start = end + 1;
  }
}

std::string edges_file_name(int turn) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%06d.csv", turn);
  return buf;
}

}  // namespace

std::string metrics_csv_row(const StepRecord& r) {
  std::string row;
  row.reserve(160);
  row += std::to_string(r.turn);
  row += ',' + format_double(r.schedule_usage);
  row += ',' + format_double(r.willingness_usage);
  row += ',' + std::to_string(r.meetings);
  row += ',' + std::to_string(r.edge_count);
  row += ',' + format_double(r.network_density);
  row += ',' + format_double(r.avg_degree);
  row += ',' + number_or_empty(r.kendall_tau);
  row += ',' + (r.top_k_intersection < 0 ? std::string() : std::to_string(r.top_k_intersection));
  row += ',' + format_double(r.first_decile_used);
  row += ',' + format_double(r.rest_used);
  return row;
}

std::string to_metrics_csv(std::span<const StepRecord> history) {
  std::string out(kMetricsHeader);
  out += '\n';
  for (const auto& r : history) {
    out += metrics_csv_row(r);
    out += '\n';
  }
  return out;
}

std::vector<StepRecord> parse_metrics_csv(std::string_view text) {
  std::vector<StepRecord> out;
  bool header_seen = false;
  for_each_line(text, [&](std::string_view line, int line_no) {
    if (!header_seen) {
      if (line != kMetricsHeader) throw FormatError("metrics.csv: unexpected header");
      header_seen = true;
      return;
    }
    const auto f = split(line, ',');
    if (f.size() != 11) throw FormatError("metrics.csv line " + std::to_string(line_no) + ": expected 11 fields");
    StepRecord r;
    r.turn = static_cast<int>(parse_field_int(f[0], line_no));
    r.schedule_usage = parse_field_double(f[1], line_no);
    r.willingness_usage = parse_field_double(f[2], line_no);
    r.meetings = static_cast<std::size_t>(parse_field_int(f[3], line_no));
    r.edge_count = static_cast<std::size_t>(parse_field_int(f[4], line_no));
    r.network_density = parse_field_double(f[5], line_no);
    r.avg_degree = parse_field_double(f[6], line_no);
    r.kendall_tau = parse_field_double(f[7], line_no);
    r.top_k_intersection = f[8].empty() ? -1 : static_cast<int>(parse_field_int(f[8], line_no));
    r.first_decile_used = parse_field_double(f[9], line_no);
    r.rest_used = parse_field_double(f[10], line_no);
    out.push_back(std::move(r));
  });
  if (!header_seen) throw FormatError("metrics.csv: empty file");
  return out;
}

std::string to_orders_csv(std::span<const StepRecord> history) {
  std::string out = "turn,order\n";
  for (const auto& r : history) {
    out += std::to_string(r.turn);
    out += ',';
    for (std::size_t i = 0; i < r.execution_order.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(r.execution_order[i]);
    }
    out += '\n';
  }
  return out;
}

void apply_orders_csv(std::string_view text, std::vector<StepRecord>& history) {
  bool header_seen = false;
  for_each_line(text, [&](std::string_view line, int line_no) {
    if (!header_seen) {
      header_seen = true;
      return;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw FormatError("orders.csv line " + std::to_string(line_no));
    const auto turn = parse_field_int(line.substr(0, comma), line_no);
    if (turn < 1 || static_cast<std::size_t>(turn) > history.size()) return;
    auto& order = history[static_cast<std::size_t>(turn - 1)].execution_order;
    order.clear();
    for (const auto& id : split(line.substr(comma + 1), ' ')) {
      if (!id.empty()) order.push_back(static_cast<AgentId>(parse_field_int(id, line_no)));
    }
  });
}

std::string to_edges_csv(const SocialGraph& graph) {
  std::string out = "node_a,node_b,strength\n";
  for (const auto& [key, e] : graph.edges()) {
    out += std::to_string(key.lo) + ',' + std::to_string(key.hi) + ',' + format_double(e.strength) + '\n';
  }
  return out;
}

bool run_complete(const fs::path& run_dir) { return fs::exists(run_dir / "metrics.csv"); }

void write_run(const fs::path& run_dir, const RunResult& result, const OutputOptions& options) {
  fs::create_directories(run_dir);
  write_text_file((run_dir / "config.txt").string(), to_config_text(result.config));
  if (options.log_orders) write_text_file((run_dir / "orders.csv").string(), to_orders_csv(result.history));
  write_text_file((run_dir / "metrics.csv").string(), to_metrics_csv(result.history));
}

RunResult read_run(const fs::path& run_dir) {
  RunResult r;
  r.config = load_config((run_dir / "config.txt").string());
  r.history = parse_metrics_csv(read_text_file((run_dir / "metrics.csv").string()));
  if (fs::exists(run_dir / "orders.csv")) {
    apply_orders_csv(read_text_file((run_dir / "orders.csv").string()), r.history);
  }
  return r;
}

RunResult run_to_directory(const ModelConfig& config, const fs::path& root, const OutputOptions& options,
                           SimulationOptions sim_options) {
  validate(config);
  const fs::path dir = root / run_id(config);
  fs::create_directories(dir);
  write_text_file((dir / "config.txt").string(), to_config_text(config));
  if (options.log_edges) fs::create_directories(dir / "edges");

  std::ofstream stream;
  const fs::path partial = dir / "metrics.csv.partial";
  if (options.streaming) {
    stream.open(partial, std::ios::binary | std::ios::trunc);
    if (!stream) throw std::runtime_error("cannot write '" + partial.string() + "'");
    stream << kMetricsHeader << '\n';
  }
  auto user_hook = std::move(sim_options.on_step);
  sim_options.on_step = [&](const Simulation& sim, const StepRecord& rec) {
    if (options.log_edges) {
      write_text_file((dir / "edges" / edges_file_name(rec.turn)).string(), to_edges_csv(sim.graph()));
    }
    if (options.streaming) stream << metrics_csv_row(rec) << '\n' << std::flush;
    if (user_hook) user_hook(sim, rec);
  };
  // Orders are needed in memory only when they are written out.
  if (!options.log_orders) sim_options.keep_agent_vectors = false;

  RunResult result = run(config, std::move(sim_options));
  if (options.log_orders) write_text_file((dir / "orders.csv").string(), to_orders_csv(result.history));
  if (options.streaming) {
    stream.close();
    fs::rename(partial, dir / "metrics.csv");
  } else {
    write_text_file((dir / "metrics.csv").string(), to_metrics_csv(result.history));
  }
  return result;
}

std::vector<RunResult> load_results(const fs::path& root) {
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && run_complete(entry.path())) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<RunResult> out;
  out.reserve(dirs.size());
  for (const auto& d : dirs) out.push_back(read_run(d));
  return out;
}

}  // namespace stratsim
