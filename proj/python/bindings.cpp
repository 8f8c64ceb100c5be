#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>

#include "stratsim/harness.hpp"
#include "stratsim/kv_format.hpp"

namespace py = pybind11;
using namespace stratsim;

namespace {

ModelConfig config_from(const py::object& obj) {
  if (py::isinstance<ModelConfig>(obj)) return obj.cast<ModelConfig>();
  if (py::isinstance<py::dict>(obj)) {
    ModelConfig c;
    for (const auto& [k, v] : obj.cast<py::dict>()) {
      set_config_value(c, py::str(k).cast<std::string>(), py::str(v).cast<std::string>());
    }
    return c;
  }
  return parse_config(obj.cast<std::string>());
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<int> steps_or_default(std::optional<std::vector<int>> steps) {
  return steps ? *steps : SweepSpec{}.snapshot_steps;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stratified execution-order simulation of meeting scheduling on an evolving social network";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<ModelConfig>(m, "ModelConfig")
      .def(py::init<>())
      .def(py::init([](const py::object& src) { return config_from(src); }), py::arg("source"))
      .def_static("from_text", &parse_config, py::arg("text"))
      .def_static("load", &load_config, py::arg("path"))
      .def("to_text", &to_config_text)
      .def("set", [](ModelConfig& c, const std::string& key, const py::object& value) {
        set_config_value(c, key, py::str(value).cast<std::string>());
      })
      .def("get", [](const ModelConfig& c, const std::string& key) {
        for (const auto& e : parse_kv(to_config_text(c))) {
          if (e.key == key) return e.values.front();
        }
        throw ConfigError("unknown key '" + key + "'");
      })
      .def("lint", &lint)
      .def("validate", &validate)
      .def("run_id", [](const ModelConfig& c) { return run_id(c); })
      .def_readwrite("n_agents", &ModelConfig::n_agents)
      .def_readwrite("culture_size", &ModelConfig::culture_size)
      .def_readwrite("interests_per_agent", &ModelConfig::interests_per_agent)
      .def_readwrite("weekdays", &ModelConfig::weekdays)
      .def_readwrite("initial_density", &ModelConfig::initial_density)
      .def_readwrite("simple_retries", &ModelConfig::simple_retries)
      .def_readwrite("steps", &ModelConfig::steps)
      .def_readwrite("seed", &ModelConfig::seed)
      .def("__eq__", [](const ModelConfig& a, const ModelConfig& b) { return a == b; })
      .def("__repr__", [](const ModelConfig& c) { return "ModelConfig(run_id=" + run_id(c) + ")"; });

  py::class_<StepRecord>(m, "StepRecord")
      .def_readonly("turn", &StepRecord::turn)
      .def_readonly("schedule_usage", &StepRecord::schedule_usage)
      .def_readonly("willingness_usage", &StepRecord::willingness_usage)
      .def_readonly("meetings", &StepRecord::meetings)
      .def_readonly("edge_count", &StepRecord::edge_count)
      .def_readonly("network_density", &StepRecord::network_density)
      .def_readonly("avg_degree", &StepRecord::avg_degree)
      .def_property_readonly("kendall_tau",
                             [](const StepRecord& r) -> std::optional<double> {
                               if (std::isnan(r.kendall_tau)) return std::nullopt;
                               return r.kendall_tau;
                             })
      .def_property_readonly("top_k_intersection",
                             [](const StepRecord& r) -> std::optional<int> {
                               if (r.top_k_intersection < 0) return std::nullopt;
                               return r.top_k_intersection;
                             })
      .def_readonly("first_decile_used", &StepRecord::first_decile_used)
      .def_readonly("rest_used", &StepRecord::rest_used)
      .def_readonly("execution_order", &StepRecord::execution_order)
      .def_readonly("per_agent_used_willingness", &StepRecord::per_agent_used_willingness);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("config", &RunResult::config)
      .def_readonly("history", &RunResult::history)
      .def_property_readonly("run_id", &RunResult::run_id)
      .def("metrics_csv", [](const RunResult& r) { return to_metrics_csv(r.history); })
      .def("__len__", [](const RunResult& r) { return r.history.size(); });

  m.def(
      "run",
      [](const py::object& config, std::optional<int> steps, std::optional<std::uint64_t> seed,
         bool keep_agent_vectors, bool check_invariants) {
        ModelConfig c = config_from(config);
        if (steps) c.steps = *steps;
        if (seed) c.seed = *seed;
        SimulationOptions opt;
        opt.keep_agent_vectors = keep_agent_vectors;
        opt.check_invariants = check_invariants;
        py::gil_scoped_release release;
        return run(c, opt);
      },
      py::arg("config"), py::arg("steps") = py::none(), py::arg("seed") = py::none(),
      py::arg("keep_agent_vectors") = true, py::arg("check_invariants") = true,
      "Run one simulation. `config` is a ModelConfig, config text, or a dict of keys.");

  m.def("run_id", [](const py::object& config) { return run_id(config_from(config)); }, py::arg("config"));

  m.def(
      "kendall_tau",
      [](const std::vector<AgentId>& a, const std::vector<AgentId>& b, bool n_minus_two) {
        return kendall_tau(a, b, n_minus_two ? TauNormalization::NMinusTwo : TauNormalization::Standard);
      },
      py::arg("a"), py::arg("b"), py::arg("n_minus_two") = false);
  m.def("kendall_tau_count", [](const std::vector<AgentId>& a, const std::vector<AgentId>& b) {
    return kendall_tau_count(a, b);
  });
  m.def(
      "top_k_intersection",
      [](const std::vector<AgentId>& a, const std::vector<AgentId>& b, std::size_t k) {
        return top_k_intersection(a, b, k);
      },
      py::arg("a"), py::arg("b"), py::arg("k"));

  m.def(
      "expand_sweep",
      [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& c : parse_sweep_spec(text).expand()) out.push_back(to_config_text(c));
        return out;
      },
      py::arg("text"), "Config texts of every run in a sweep file's grid.");

  m.def(
      "run_sweep",
      [](const std::string& text, const std::string& out_dir, int jobs) {
        SweepOptions opt;
        opt.out_dir = out_dir;
        opt.jobs = jobs;
        opt.simulation.keep_agent_vectors = false;
        const SweepSpec spec = parse_sweep_spec(text);
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = run_sweep(spec, opt);
        }
        if (!r.failures.empty()) {
          throw std::runtime_error(std::to_string(r.failures.size()) + " runs failed; first: " +
                                   r.failures.front().run_id + ": " + r.failures.front().error);
        }
        return r.runs;
      },
      py::arg("text"), py::arg("out_dir") = "", py::arg("jobs") = 1);

  m.def("load_results", [](const std::string& dir) { return load_results(dir); }, py::arg("dir"));

  m.def(
      "winner_table",
      [](const std::vector<RunResult>& runs, std::optional<std::vector<int>> steps) {
        return json_to_py(to_json(winner_table(runs, steps_or_default(steps))));
      },
      py::arg("runs"), py::arg("steps") = py::none());
  m.def(
      "correlation_bins",
      [](const std::vector<RunResult>& runs, const std::string& metric, int first, int last) {
        return json_to_py(to_json(correlation_bins(runs, parse_series_metric(metric), StepWindow{first, last})));
      },
      py::arg("runs"), py::arg("metric") = "kendall_tau", py::arg("first") = 1, py::arg("last") = 0);
  m.def(
      "decile_advantage", [](const std::vector<RunResult>& runs) { return json_to_py(to_json(decile_advantage(runs))); },
      py::arg("runs"));
  m.def(
      "preferential_comparison",
      [](const std::vector<RunResult>& runs, double alpha) {
        return json_to_py(to_json(preferential_comparison(runs, alpha)));
      },
      py::arg("runs"), py::arg("alpha") = 0.05);
}
