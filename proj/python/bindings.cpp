#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sebn/errors.hpp"
#include "sebn/gp_kernel.hpp"
#include "sebn/graph.hpp"
#include "sebn/harness.hpp"
#include "sebn/horseshoe.hpp"
#include "sebn/io.hpp"
#include "sebn/synthetic.hpp"

namespace py = pybind11;
namespace fs = std::filesystem;
using namespace sebn;

namespace {

std::string row_json(const harness::MetricsRow& row) {
  io::json doc;
  doc["seed"] = row.seed;
  doc["n"] = row.n;
  doc["mode"] = row.mode;
  doc["hs_expert"] = row.hs_expert ? io::json(*row.hs_expert) : io::json(nullptr);
  doc["hs_nonexpert"] = row.hs_nonexpert ? io::json(*row.hs_nonexpert) : io::json(nullptr);
  doc["hs_weight"] = row.hs_weight;
  doc["threshold"] = row.threshold;
  doc["shd"] = row.shd ? io::json(*row.shd) : io::json(nullptr);
  doc["test_loglik"] = row.test_loglik ? io::json(*row.test_loglik) : io::json(nullptr);
  doc["wall_time_s"] = row.wall_time_s;
  doc["status"] = row.status;
  return doc.dump();
}

}  // namespace

PYBIND11_MODULE(_sebn, m) {
  m.doc() = "Semi-parametric expert Bayesian network learning";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("hs_log_prior", [](const std::vector<double>& amplitudes, const std::vector<double>& scales) {
    return hs_log_prior(amplitudes, scales);
  }, py::arg("amplitudes"), py::arg("scales"));
  m.def("hs_log_prior_grad", [](const std::vector<double>& amplitudes, const std::vector<double>& scales) {
    return hs_log_prior_grad(amplitudes, scales);
  }, py::arg("amplitudes"), py::arg("scales"));

  m.def("se_kernel_matrix", [](const Eigen::VectorXd& x, double amplitude, double lengthscale) {
    return se_kernel_matrix(x, {amplitude, lengthscale});
  }, py::arg("x"), py::arg("amplitude"), py::arg("lengthscale"));
  m.def("gp_marginal_loglik", [](const Eigen::VectorXd& residual, const Eigen::MatrixXd& covariance) {
    return gp_marginal_loglik(residual, covariance);
  }, py::arg("residual"), py::arg("covariance"));

  m.def("generate", [](const std::string& mode, int nodes, std::uint64_t seed, const fs::path& out, int train,
                       int val, int test) {
    GenConfig cfg = GenConfig::for_mode(gen_mode_from_string(mode), nodes, seed);
    cfg.sizes = {train, val, test};
    harness::generate_case(cfg, out);
  }, py::arg("mode"), py::arg("nodes"), py::arg("seed"), py::arg("out"), py::arg("train") = 500,
     py::arg("val") = 100, py::arg("test") = 100);

  m.def("learn", [](const fs::path& data, const std::string& spec_json, std::uint64_t seed, const fs::path& expert,
                    const fs::path& truth, std::optional<double> noise_variance, int workers) {
    const auto inputs = harness::load_learn_inputs(data, expert, truth, noise_variance);
    const auto spec = harness::model_spec_from_json(io::json::parse(spec_json));
    py::gil_scoped_release release;
    const auto outcome = harness::run_learn(inputs, spec, seed, workers);
    return std::make_pair(row_json(outcome.row), outcome.learned_doc.dump());
  }, py::arg("data"), py::arg("spec_json"), py::arg("seed") = 0, py::arg("expert") = fs::path(),
     py::arg("truth") = fs::path(), py::arg("noise_variance") = std::nullopt, py::arg("workers") = 1);

  m.def("sweep", [](const std::string& config_json) {
    const auto cfg = harness::experiment_from_json(io::json::parse(config_json));
    harness::SweepResult result;
    {
      py::gil_scoped_release release;
      result = harness::run_sweep(cfg);
    }
    std::vector<std::string> rows;
    for (const auto& r : result.rows) rows.push_back(row_json(r));
    return std::make_pair(result.labels, rows);
  }, py::arg("config_json"));

  m.def("shd", [](const std::string& a_json, const std::string& b_json) {
    return shd(io::graph_from_json(io::json::parse(a_json)), io::graph_from_json(io::json::parse(b_json)));
  }, py::arg("a_json"), py::arg("b_json"));
  m.def("to_dot", [](const std::string& graph_json) {
    return to_dot(io::graph_from_json(io::json::parse(graph_json)));
  }, py::arg("graph_json"));
  m.def("five_node_example", [] {
    const auto truth = five_node_example();
    return io::graph_to_json(truth.graph()).dump();
  });
}
