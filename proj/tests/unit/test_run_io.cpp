#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "stratsim/kv_format.hpp"
#include "stratsim/run_io.hpp"

using namespace stratsim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("stratsim_" + tag + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void expect_same_scalars(const std::vector<StepRecord>& a, const std::vector<StepRecord>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].turn, b[i].turn);
    EXPECT_EQ(a[i].schedule_usage, b[i].schedule_usage);
    EXPECT_EQ(a[i].willingness_usage, b[i].willingness_usage);
    EXPECT_EQ(a[i].meetings, b[i].meetings);
    EXPECT_EQ(a[i].edge_count, b[i].edge_count);
    EXPECT_EQ(a[i].network_density, b[i].network_density);
    EXPECT_EQ(a[i].avg_degree, b[i].avg_degree);
    if (std::isnan(a[i].kendall_tau)) {
      EXPECT_TRUE(std::isnan(b[i].kendall_tau));
    } else {
      EXPECT_EQ(a[i].kendall_tau, b[i].kendall_tau);
    }
    EXPECT_EQ(a[i].top_k_intersection, b[i].top_k_intersection);
    EXPECT_EQ(a[i].first_decile_used, b[i].first_decile_used);
    EXPECT_EQ(a[i].rest_used, b[i].rest_used);
  }
}

}  // namespace

TEST(MetricsCsv, RoundTripIsExact) {
  const RunResult r = run(test::small_config(2));
  const std::string text = to_metrics_csv(r.history);
  EXPECT_EQ(text.substr(0, kMetricsHeader.size()), kMetricsHeader);
  const auto back = parse_metrics_csv(text);
  expect_same_scalars(r.history, back);
  EXPECT_EQ(to_metrics_csv(back), text);
}

TEST(MetricsCsv, FirstTurnSentinelsAreEmptyFields) {
  StepRecord rec;
  rec.turn = 1;
  rec.kendall_tau = std::nan("");
  rec.top_k_intersection = -1;
  const std::string row = metrics_csv_row(rec);
  EXPECT_EQ(row, "1,0,0,0,0,0,0,,,0,0");
}

TEST(MetricsCsv, RejectsMalformedInput) {
  EXPECT_THROW(parse_metrics_csv(""), FormatError);
  EXPECT_THROW(parse_metrics_csv("turn,x\n"), FormatError);
  const std::string header(kMetricsHeader);
  EXPECT_THROW(parse_metrics_csv(header + "\n1,2,3\n"), FormatError);
  EXPECT_THROW(parse_metrics_csv(header + "\n1,a,0,0,0,0,0,,,0,0\n"), FormatError);
  EXPECT_TRUE(parse_metrics_csv(header + "\n").empty());
}

TEST(OrdersCsv, RoundTrip) {
  const RunResult r = run(test::small_config(3));
  auto scalars = parse_metrics_csv(to_metrics_csv(r.history));
  apply_orders_csv(to_orders_csv(r.history), scalars);
  for (std::size_t i = 0; i < r.history.size(); ++i) EXPECT_EQ(scalars[i].execution_order, r.history[i].execution_order);
}

TEST(EdgesCsv, ListsEveryEdge) {
  SocialGraph g(4);
  g.add_edge(2, 0, 1.5);
  g.add_edge(1, 3, 0.25);
  const std::string text = to_edges_csv(g);
  EXPECT_EQ(text.rfind("node_a,node_b,strength\n", 0), 0u);
  EXPECT_NE(text.find("0,2,1.5\n"), std::string::npos);
  EXPECT_NE(text.find("1,3,0.25\n"), std::string::npos);
}

TEST(RunDirectory, WriteAndReadBack) {
  TempDir tmp("rw");
  ModelConfig c = test::small_config(4);
  c.steps = 12;
  OutputOptions out;
  out.log_orders = true;
  out.log_edges = true;
  const RunResult r = run_to_directory(c, tmp.path, out);
  const fs::path dir = tmp.path / r.run_id();
  ASSERT_TRUE(run_complete(dir));
  EXPECT_TRUE(fs::exists(dir / "orders.csv"));
  EXPECT_TRUE(fs::exists(dir / "edges" / "step_000001.csv"));
  EXPECT_TRUE(fs::exists(dir / "edges" / "step_000012.csv"));
  EXPECT_FALSE(fs::exists(dir / "edges" / "step_000013.csv"));

  const RunResult back = read_run(dir);
  EXPECT_EQ(to_config_text(back.config), to_config_text(c));
  EXPECT_EQ(back.run_id(), r.run_id());
  expect_same_scalars(r.history, back.history);
  for (std::size_t i = 0; i < r.history.size(); ++i) EXPECT_EQ(back.history[i].execution_order, r.history[i].execution_order);
}

TEST(RunDirectory, StreamingMatchesBatch) {
  TempDir a("batch"), b("stream");
  const ModelConfig c = test::small_config(5);
  OutputOptions streaming;
  streaming.streaming = true;
  const RunResult ra = run_to_directory(c, a.path, {});
  run_to_directory(c, b.path, streaming);
  const fs::path db = b.path / ra.run_id();
  EXPECT_FALSE(fs::exists(db / "metrics.csv.partial"));
  EXPECT_EQ(read_text_file((a.path / ra.run_id() / "metrics.csv").string()),
            read_text_file((db / "metrics.csv").string()));
  EXPECT_FALSE(fs::exists(db / "orders.csv"));
}

TEST(RunDirectory, IncompleteRunsAreIgnored) {
  TempDir tmp("load");
  std::vector<std::string> ids;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    ModelConfig c = test::small_config(seed);
    c.steps = 5;
    OutputOptions opt;
    ids.push_back(run_to_directory(c, tmp.path, opt).run_id());
  }
  fs::create_directories(tmp.path / "0000half_done");
  std::ofstream(tmp.path / "0000half_done" / "config.txt") << "seed = 1\n";
  const auto loaded = load_results(tmp.path);
  ASSERT_EQ(loaded.size(), 3u);
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(loaded[i].run_id(), ids[i]);
}
