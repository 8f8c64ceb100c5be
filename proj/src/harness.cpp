#include "stratsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <type_traits>

#include "stratsim/kv_format.hpp"
#include "stratsim/stats.hpp"

namespace stratsim {

namespace fs = std::filesystem;

namespace {

std::size_t ordering_index(Ordering o) {
  for (std::size_t i = 0; i < kAllOrderings.size(); ++i) {
    if (kAllOrderings[i] == o) return i;
  }
  return 0;
}

std::map<std::string, std::string> config_values(const ModelConfig& config) {
  std::map<std::string, std::string> out;
  for (const auto& e : parse_kv(to_config_text(config))) out[e.key] = e.values.front();
  return out;
}

// "key=value;key=value" over the keys whose values differ across `configs`.
std::vector<std::string> varying_labels(const std::vector<ModelConfig>& configs) {
  std::vector<std::map<std::string, std::string>> values;
  values.reserve(configs.size());
  for (const auto& c : configs) values.push_back(config_values(c));
  std::vector<std::string> varying;
  for (const auto& key : config_keys()) {
    std::set<std::string> seen;
    for (const auto& v : values) {
      if (auto it = v.find(key); it != v.end()) seen.insert(it->second);
    }
    if (seen.size() > 1) varying.push_back(key);
  }
  std::vector<std::string> labels;
  labels.reserve(configs.size());
  for (const auto& v : values) {
    std::string label;
    for (const auto& key : varying) {
      if (!label.empty()) label += ';';
      label += key + '=' + v.at(key);
    }
    labels.push_back(label.empty() ? "all" : label);
  }
  return labels;
}

std::string pct(double v) { return format_double(std::round(v * 1e4) / 1e4); }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

bool is_mobile(const RunResult& r) { return r.config.ordering == Ordering::Mobile; }

}  // namespace

// ---------------------------------------------------------------------------
// Sweep specs

std::size_t SweepSpec::cell_count() const {
  std::size_t n = 1;
  for (const auto& [key, values] : axes) {
    if (key != "ordering") n *= values.size();
  }
  return n;
}

std::vector<ModelConfig> SweepSpec::expand() const {
  std::vector<Ordering> orderings{base.ordering};
  std::vector<const std::pair<std::string, std::vector<std::string>>*> grid;
  for (const auto& axis : axes) {
    if (axis.first == "ordering") {
      orderings.clear();
      for (const auto& v : axis.second) orderings.push_back(parse_ordering(v));
    } else {
      grid.push_back(&axis);
    }
  }

  std::vector<ModelConfig> out;
  std::vector<std::size_t> index(grid.size(), 0);
  while (true) {
    ModelConfig cell = base;
    // Presets first, as in parse_config.
    for (std::size_t g = 0; g < grid.size(); ++g) {
      if (grid[g]->first == "relation_preset") set_config_value(cell, grid[g]->first, grid[g]->second[index[g]]);
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
      if (grid[g]->first != "relation_preset") set_config_value(cell, grid[g]->first, grid[g]->second[index[g]]);
    }
    for (const Ordering o : orderings) {
      for (int s = 0; s < seeds_per_cell; ++s) {
        ModelConfig c = cell;
        c.ordering = o;
        c.seed = seed_base + static_cast<std::uint64_t>(s);
        out.push_back(std::move(c));
      }
    }
    // Odometer increment; the first axis varies slowest.
    std::size_t g = grid.size();
    while (g > 0) {
      --g;
      if (++index[g] < grid[g]->second.size()) break;
      index[g] = 0;
      if (g == 0) return out;
    }
    if (grid.empty()) return out;
  }
}

SweepSpec parse_sweep_spec(std::string_view text) {
  SweepSpec spec;
  const auto entries = parse_kv(text);
  auto scalar = [](const KvEntry& e) -> const std::string& {
    if (e.is_list || e.values.size() != 1) {
      throw ConfigError("line " + std::to_string(e.line) + ": '" + e.key + "' takes a single value");
    }
    return e.values.front();
  };
  auto as_int = [](const KvEntry& e, const std::string& v) {
    try {
      std::size_t used = 0;
      const long long x = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(e.line) + ": '" + e.key + "' expects integers");
    }
  };

  // Scalar presets first, mirroring parse_config.
  for (const auto& e : entries) {
    if (e.key == "relation_preset" && !e.is_list) set_config_value(spec.base, e.key, scalar(e));
  }
  for (const auto& e : entries) {
    if (e.key == "seeds") {
      spec.seeds_per_cell = static_cast<int>(as_int(e, scalar(e)));
      if (spec.seeds_per_cell < 1) throw ConfigError("seeds must be at least 1");
    } else if (e.key == "seed_base") {
      spec.seed_base = static_cast<std::uint64_t>(as_int(e, scalar(e)));
    } else if (e.key == "seed") {
      throw ConfigError("line " + std::to_string(e.line) + ": sweeps take 'seeds' and 'seed_base', not 'seed'");
    } else if (e.key == "snapshot_steps") {
      spec.snapshot_steps.clear();
      for (const auto& v : e.values) spec.snapshot_steps.push_back(static_cast<int>(as_int(e, v)));
    } else if (e.is_list) {
      if (e.values.empty()) throw ConfigError("line " + std::to_string(e.line) + ": empty axis '" + e.key + "'");
      for (const auto& v : e.values) {
        ModelConfig probe = spec.base;
        try {
          set_config_value(probe, e.key, v);
        } catch (const ConfigError& err) {
          throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
        }
      }
      spec.axes.emplace_back(e.key, e.values);
    } else if (e.key != "relation_preset") {
      try {
        set_config_value(spec.base, e.key, scalar(e));
      } catch (const ConfigError& err) {
        throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
      }
    }
  }
  spec.base.seed = spec.seed_base;
  for (const auto& c : spec.expand()) validate(c);
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) { return parse_sweep_spec(read_text_file(path)); }

std::string to_sweep_text(const SweepSpec& spec) {
  std::set<std::string> axis_keys;
  for (const auto& [key, values] : spec.axes) axis_keys.insert(key);
  std::string out;
  for (const auto& e : parse_kv(to_config_text(spec.base))) {
    if (e.key == "seed" || axis_keys.count(e.key)) continue;
    out += e.key + " = " + e.values.front() + "\n";
  }
  auto list = [](const auto& values) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ", ";
      if constexpr (std::is_same_v<std::decay_t<decltype(values[i])>, std::string>) {
        s += values[i];
      } else {
        s += std::to_string(values[i]);
      }
    }
    return s + "]";
  };
  for (const auto& [key, values] : spec.axes) out += key + " = " + list(values) + "\n";
  out += "seeds = " + std::to_string(spec.seeds_per_cell) + "\n";
  out += "seed_base = " + std::to_string(spec.seed_base) + "\n";
  out += "snapshot_steps = " + list(spec.snapshot_steps) + "\n";
  return out;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  std::vector<ModelConfig> configs;
  {
    std::set<std::string> ids;
    for (auto& c : spec.expand()) {
      if (ids.insert(run_id(c)).second) configs.push_back(std::move(c));
    }
  }

  SweepResult result;
  std::vector<std::optional<RunResult>> slots(configs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> computed{0};
  std::atomic<std::size_t> reused{0};
  std::mutex mu;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      const std::string id = run_id(configs[i]);
      try {
        bool fresh = true;
        if (!options.out_dir.empty() && run_complete(options.out_dir / id)) {
          slots[i] = read_run(options.out_dir / id);
          fresh = false;
          ++reused;
        } else if (!options.out_dir.empty()) {
          slots[i] = run_to_directory(configs[i], options.out_dir, options.output, options.simulation);
          ++computed;
        } else {
          slots[i] = run(configs[i], options.simulation);
          ++computed;
        }
        if (options.on_run_done) {
          std::lock_guard lock(mu);
          options.on_run_done(id, fresh);
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        result.failures.push_back({id, e.what()});
      }
    }
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (auto& s : slots) {
    if (s) result.runs.push_back(std::move(*s));
  }
  std::sort(result.runs.begin(), result.runs.end(),
            [](const RunResult& a, const RunResult& b) { return a.run_id() < b.run_id(); });
  std::sort(result.failures.begin(), result.failures.end(),
            [](const SweepFailure& a, const SweepFailure& b) { return a.run_id < b.run_id; });
  result.computed = computed;
  result.reused = reused;
  return result;
}

// ---------------------------------------------------------------------------
// Winner tables

std::string cell_key(const ModelConfig& config) {
  ModelConfig c = config;
  c.ordering = Ordering::Egalitarian;
  c.seed.reset();
  return to_config_text(c);
}

double WinnerRow::percent(std::size_t count) const {
  return cells == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(cells);
}

WinnerTable winner_table(std::span<const RunResult> results, std::span<const int> steps) {
  struct Cell {
    ModelConfig config;
    std::array<std::vector<const RunResult*>, 3> runs;
  };
  std::map<std::string, Cell> cells;
  for (const auto& r : results) {
    auto& cell = cells[cell_key(r.config)];
    cell.config = r.config;
    cell.config.ordering = Ordering::Egalitarian;
    cell.config.seed.reset();
    cell.runs[ordering_index(r.config.ordering)].push_back(&r);
  }

  std::vector<std::string> groups{"all"};
  std::set<Heuristic> heuristics;
  for (const auto& [key, cell] : cells) heuristics.insert(cell.config.heuristic);
  if (heuristics.size() > 1) {
    for (Heuristic h : heuristics) groups.emplace_back(to_string(h));
  }

  std::vector<ModelConfig> cell_configs;
  for (const auto& [key, cell] : cells) cell_configs.push_back(cell.config);
  const auto labels = varying_labels(cell_configs);

  WinnerTable table;
  std::set<std::string> excluded;
  for (const auto& group : groups) {
    for (const int step : steps) {
      WinnerRow row;
      row.group = group;
      row.step = step;
      std::size_t ci = 0;
      for (const auto& [key, cell] : cells) {
        const std::string& label = labels[ci++];
        if (group != "all" && to_string(cell.config.heuristic) != group) continue;
        bool complete = step >= 1;
        for (const auto& runs : cell.runs) {
          if (runs.empty()) complete = false;
          for (const auto* r : runs) {
            if (static_cast<int>(r->history.size()) < step) complete = false;
          }
        }
        if (!complete) {
          excluded.insert(label + " @ step " + std::to_string(step));
          continue;
        }
        std::array<double, 3> means{};
        for (std::size_t o = 0; o < 3; ++o) {
          double sum = 0.0;
          for (const auto* r : cell.runs[o]) sum += r->history[static_cast<std::size_t>(step - 1)].willingness_usage;
          means[o] = sum / static_cast<double>(cell.runs[o].size());
        }
        const double best = *std::max_element(means.begin(), means.end());
        const auto n_best = std::count(means.begin(), means.end(), best);
        ++row.cells;
        if (n_best > 1) {
          ++row.ties;
        } else {
          ++row.wins[static_cast<std::size_t>(std::find(means.begin(), means.end(), best) - means.begin())];
        }
      }
      table.rows.push_back(row);
    }
  }
  table.excluded.assign(excluded.begin(), excluded.end());
  return table;
}

// ---------------------------------------------------------------------------
// Correlation bins

std::string_view to_string(SeriesMetric m) {
  return m == SeriesMetric::KendallTau ? "kendall_tau" : "top_k_intersection";
}

SeriesMetric parse_series_metric(std::string_view s) {
  if (s == "kendall_tau" || s == "kendall") return SeriesMetric::KendallTau;
  if (s == "top_k_intersection" || s == "intersection") return SeriesMetric::TopKIntersection;
  throw ConfigError("unknown metric '" + std::string(s) + "' (expected kendall_tau or top_k_intersection)");
}

CorrelationBin correlation_bin(std::optional<double> r) {
  if (!r) return CorrelationBin::Neutral;
  if (*r < -0.1) return CorrelationBin::Negative;
  if (*r > 0.1) return CorrelationBin::Positive;
  return CorrelationBin::Neutral;
}

std::optional<double> series_correlation(const RunResult& run, SeriesMetric metric, StepWindow window) {
  const int n = static_cast<int>(run.history.size());
  const int first = std::max(1, window.first);
  const int last = (window.last <= 0 || window.last > n) ? n : window.last;
  if (last - first + 1 < 3) {
    throw std::invalid_argument("correlation window must span at least 3 turns");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (int t = first; t <= last; ++t) {
    const auto& rec = run.history[static_cast<std::size_t>(t - 1)];
    double v = 0.0;
    if (metric == SeriesMetric::KendallTau) {
      if (std::isnan(rec.kendall_tau)) continue;
      v = rec.kendall_tau;
    } else {
      if (rec.top_k_intersection < 0) continue;
      v = rec.top_k_intersection;
    }
    xs.push_back(t);
    ys.push_back(v);
  }
  return stats::pearson(xs, ys);
}

double BinRow::percent(CorrelationBin b) const {
  return runs == 0 ? 0.0 : 100.0 * static_cast<double>(counts[static_cast<std::size_t>(b)]) / static_cast<double>(runs);
}

CorrelationReport correlation_bins(std::span<const RunResult> results, SeriesMetric metric, StepWindow window) {
  if (window.last > 0 && window.last - window.first + 1 < 3) {
    throw std::invalid_argument("correlation window must span at least 3 turns");
  }
  CorrelationReport report;
  report.metric = metric;
  report.window = window;

  std::vector<const RunResult*> runs;
  for (const auto& r : results) {
    if (is_mobile(r)) runs.push_back(&r);
  }

  std::vector<std::map<std::string, std::string>> values;
  std::vector<CorrelationBin> bins;
  BinRow overall{"all", "all", 0, {}};
  for (const auto* r : runs) {
    const auto corr = series_correlation(*r, metric, window);
    report.per_run.push_back({r->run_id(), corr});
    bins.push_back(correlation_bin(corr));
    values.push_back(config_values(r->config));
    ++overall.runs;
    ++overall.counts[static_cast<std::size_t>(bins.back())];
  }

  for (const auto& key : config_keys()) {
    if (key == "seed" || key == "ordering") continue;
    std::map<std::string, BinRow> by_value;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const std::string& v = values[i].at(key);
      auto& row = by_value[v];
      row.parameter = key;
      row.value = v;
      ++row.runs;
      ++row.counts[static_cast<std::size_t>(bins[i])];
    }
    if (by_value.size() < 2) continue;
    for (auto& [v, row] : by_value) report.rows.push_back(row);
  }
  report.rows.push_back(overall);
  return report;
}

// ---------------------------------------------------------------------------
// Privileged-decile advantage

std::optional<double> run_uplift(const RunResult& run) {
  double first = 0.0;
  double rest = 0.0;
  for (const auto& rec : run.history) {
    first += rec.first_decile_used;
    rest += rec.rest_used;
  }
  if (!(rest > 0.0)) return std::nullopt;
  return 100.0 * (first / rest - 1.0);
}

std::vector<DecileRow> decile_advantage(std::span<const RunResult> results) {
  std::vector<DecileRow> rows;
  for (const Ordering o : kAllOrderings) {
    std::vector<double> uplifts;
    for (const auto& r : results) {
      if (r.config.ordering != o) continue;
      if (const auto u = run_uplift(r)) uplifts.push_back(*u);
    }
    if (uplifts.empty()) continue;
    DecileRow row;
    row.ordering = o;
    row.runs = uplifts.size();
    row.mean_uplift_percent = stats::mean(uplifts);
    row.min_uplift_percent = *std::min_element(uplifts.begin(), uplifts.end());
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Preferential attachment comparison

double mean_kendall_tau(const RunResult& run) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& rec : run.history) {
    if (std::isnan(rec.kendall_tau)) continue;
    sum += rec.kendall_tau;
    ++n;
  }
  return n == 0 ? std::nan("") : sum / static_cast<double>(n);
}

PreferentialReport preferential_comparison(std::span<const RunResult> results, double alpha) {
  struct Group {
    ModelConfig config;
    std::vector<double> preferential;
    std::vector<double> uniform;
  };
  std::map<std::string, Group> groups;
  std::vector<double> all_pref;
  std::vector<double> all_uniform;
  for (const auto& r : results) {
    if (!is_mobile(r)) continue;
    const double kt = mean_kendall_tau(r);
    if (std::isnan(kt)) continue;
    ModelConfig key = r.config;
    key.creation.neighbor_choice = NeighborChoice::Uniform;
    key.seed.reset();
    auto& g = groups[cell_key(key)];
    g.config = key;
    if (r.config.creation.neighbor_choice == NeighborChoice::Preferential) {
      g.preferential.push_back(kt);
      all_pref.push_back(kt);
    } else {
      g.uniform.push_back(kt);
      all_uniform.push_back(kt);
    }
  }

  std::vector<ModelConfig> configs;
  for (const auto& [k, g] : groups) configs.push_back(g.config);
  const auto labels = varying_labels(configs);

  PreferentialReport report;
  report.alpha = alpha;
  std::size_t i = 0;
  for (const auto& [k, g] : groups) {
    const std::string& label = labels[i++];
    if (g.preferential.empty() || g.uniform.empty()) {
      report.unmatched.push_back(label);
      continue;
    }
    PreferentialPair p;
    p.cell = label;
    p.n_preferential = g.preferential.size();
    p.n_uniform = g.uniform.size();
    p.mean_preferential = stats::mean(g.preferential);
    p.mean_uniform = stats::mean(g.uniform);
    p.preferential_lower = p.mean_preferential < p.mean_uniform;
    if (p.n_preferential >= 2 && p.n_uniform >= 2) {
      const auto w = stats::welch_t_test(g.preferential, g.uniform);
      p.t = w.t;
      p.p_value = w.p_value;
    }
    report.pairs.push_back(p);
  }

  const std::size_t m = report.pairs.size();
  report.threshold = m == 0 ? alpha : alpha / static_cast<double>(m);
  std::size_t lower = 0;
  std::size_t lower_sig = 0;
  for (auto& p : report.pairs) {
    p.significant = p.p_value < report.threshold;
    if (p.preferential_lower) ++lower;
    if (p.preferential_lower && p.significant) ++lower_sig;
  }
  if (m > 0) {
    report.percent_lower = 100.0 * static_cast<double>(lower) / static_cast<double>(m);
    report.percent_lower_significant = 100.0 * static_cast<double>(lower_sig) / static_cast<double>(m);
  }
  report.mean_preferential = stats::mean(all_pref);
  report.mean_uniform = stats::mean(all_uniform);
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

std::string to_csv(const WinnerTable& t) {
  std::string out = "group,step,cells,egalitarian_pct,hierarchical_pct,mobile_pct,tie_pct\n";
  for (const auto& r : t.rows) {
    out += r.group + ',' + std::to_string(r.step) + ',' + std::to_string(r.cells) + ',' + pct(r.percent(r.wins[0])) +
           ',' + pct(r.percent(r.wins[1])) + ',' + pct(r.percent(r.wins[2])) + ',' + pct(r.percent(r.ties)) + '\n';
  }
  return out;
}

nlohmann::json to_json(const WinnerTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"group", r.group},
                    {"step", r.step},
                    {"cells", r.cells},
                    {"egalitarian_pct", r.percent(r.wins[0])},
                    {"hierarchical_pct", r.percent(r.wins[1])},
                    {"mobile_pct", r.percent(r.wins[2])},
                    {"tie_pct", r.percent(r.ties)}});
  }
  return {{"analysis", "winners"}, {"rows", rows}, {"excluded", t.excluded}};
}

std::string to_csv(const CorrelationReport& r) {
  std::string out = "metric,window_first,window_last,parameter,value,runs,negative_pct,neutral_pct,positive_pct\n";
  for (const auto& row : r.rows) {
    out += std::string(to_string(r.metric)) + ',' + std::to_string(r.window.first) + ',' +
           std::to_string(r.window.last) + ',' + row.parameter + ',' + csv_quote(row.value) + ',' +
           std::to_string(row.runs) + ',' + pct(row.percent(CorrelationBin::Negative)) + ',' +
           pct(row.percent(CorrelationBin::Neutral)) + ',' + pct(row.percent(CorrelationBin::Positive)) + '\n';
  }
  return out;
}

nlohmann::json to_json(const CorrelationReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"parameter", row.parameter},
                    {"value", row.value},
                    {"runs", row.runs},
                    {"negative_pct", row.percent(CorrelationBin::Negative)},
                    {"neutral_pct", row.percent(CorrelationBin::Neutral)},
                    {"positive_pct", row.percent(CorrelationBin::Positive)}});
  }
  nlohmann::json per_run = nlohmann::json::array();
  for (const auto& pr : r.per_run) {
    per_run.push_back({{"run_id", pr.run_id}, {"r", pr.r ? nlohmann::json(*pr.r) : nlohmann::json(nullptr)}});
  }
  return {{"analysis", "correlation"},
          {"metric", to_string(r.metric)},
          {"window", {r.window.first, r.window.last}},
          {"rows", rows},
          {"per_run", per_run}};
}

std::string to_csv(std::span<const DecileRow> rows) {
  std::string out = "ordering,runs,mean_uplift_pct,min_uplift_pct\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.ordering)) + ',' + std::to_string(r.runs) + ',' + pct(r.mean_uplift_percent) + ',' +
           pct(r.min_uplift_percent) + '\n';
  }
  return out;
}

nlohmann::json to_json(std::span<const DecileRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"ordering", to_string(r.ordering)},
                   {"runs", r.runs},
                   {"mean_uplift_pct", r.mean_uplift_percent},
                   {"min_uplift_pct", r.min_uplift_percent}});
  }
  return {{"analysis", "decile"}, {"rows", out}};
}

std::string to_csv(const PreferentialReport& r) {
  std::string out =
      "cell,n_preferential,n_uniform,mean_kt_preferential,mean_kt_uniform,t,p_value,preferential_lower,significant\n";
  for (const auto& p : r.pairs) {
    out += csv_quote(p.cell) + ',' + std::to_string(p.n_preferential) + ',' + std::to_string(p.n_uniform) + ',' +
           format_double(p.mean_preferential) + ',' + format_double(p.mean_uniform) + ',' + format_double(p.t) + ',' +
           format_double(p.p_value) + ',' + (p.preferential_lower ? "true" : "false") + ',' +
           (p.significant ? "true" : "false") + '\n';
  }
  return out;
}

nlohmann::json to_json(const PreferentialReport& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"cell", p.cell},
                     {"n_preferential", p.n_preferential},
                     {"n_uniform", p.n_uniform},
                     {"mean_kt_preferential", p.mean_preferential},
                     {"mean_kt_uniform", p.mean_uniform},
                     {"t", std::isfinite(p.t) ? nlohmann::json(p.t) : nlohmann::json(format_double(p.t))},
                     {"p_value", p.p_value},
                     {"preferential_lower", p.preferential_lower},
                     {"significant", p.significant}});
  }
  return {{"analysis", "preferential"},
          {"alpha", r.alpha},
          {"threshold", r.threshold},
          {"mean_kt_preferential", r.mean_preferential},
          {"mean_kt_uniform", r.mean_uniform},
          {"percent_lower", r.percent_lower},
          {"percent_lower_significant", r.percent_lower_significant},
          {"pairs", pairs},
          {"unmatched", r.unmatched}};
}

}  // namespace stratsim
