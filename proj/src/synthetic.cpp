#include "sebn/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sebn/errors.hpp"

namespace sebn {

std::string to_string(GenMode mode) { return mode == GenMode::IndependentAddition ? "id" : "ed"; }

GenMode gen_mode_from_string(const std::string& text) {
  if (text == "id" || text == "ID") return GenMode::IndependentAddition;
  if (text == "ed" || text == "ED") return GenMode::ExpertGuided;
  throw ContractViolation("unknown generator mode '" + text + "' (expected id or ed)");
}

GenConfig GenConfig::for_mode(GenMode mode, int n, std::uint64_t seed) {
  GenConfig c;
  c.n = n;
  c.mode = mode;
  c.p_add = mode == GenMode::IndependentAddition ? 0.5 : 0.01;
  c.seed = seed;
  return c;
}

void GenConfig::validate() const {
  if (n < 2) throw ContractViolation("GenConfig: need at least 2 nodes");
  if (n > NodeSet::kMaxNodes) throw ContractViolation("GenConfig: at most 26 nodes");
  for (double p : {p_linear, p_modify, p_add})
    if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("GenConfig: probabilities must lie in [0, 1]");
  if (!(root_variance > 0.0) || !(noise_variance > 0.0)) throw ContractViolation("GenConfig: variances must be positive");
  if (sizes.train < 1 || sizes.validation < 1 || sizes.test < 1) throw ContractViolation("GenConfig: split sizes must be positive");
}

GroundTruth make_ground_truth(ExpertGraph expert, GpEdgeSet gp) {
  GroundTruth truth{std::move(expert), std::move(gp), {}};
  for (int i = 0; i < truth.expert.size(); ++i)
    truth.linear.push_back(LinearTerm{std::vector<double>(truth.expert.parents(i).size(), 1.0), 0.0});
  if (auto check = validate_dag(truth.expert, truth.gp); !check.ok)
    throw ContractViolation("ground truth: union graph is cyclic");
  return truth;
}

GroundTruth gen_structure(const GenConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AdjacencyMatrix linear(config.n);
  AdjacencyMatrix gp(config.n);
  for (int i = 0; i < config.n; ++i) {
    for (int j = 0; j < i; ++j) {
      // Two draws per pair regardless of outcome keeps the stream aligned across configs.
      const double u_linear = unit(rng);
      const double u_gp = unit(rng);
      const bool is_linear = u_linear < config.p_linear;
      if (is_linear) linear.set_edge(j, i);
      if (u_gp < (is_linear ? config.p_modify : config.p_add)) gp.set_edge(j, i);
    }
  }
  return make_ground_truth(ExpertGraph(std::move(linear)), GpEdgeSet(std::move(gp)));
}

namespace {

Eigen::MatrixXd sample_split(const GroundTruth& truth, const GenConfig& config, int rows, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> standard(0.0, 1.0);
  const int n = truth.expert.size();
  const double root_sd = std::sqrt(config.root_variance);
  const double noise_sd = std::sqrt(config.noise_variance);

  std::vector<std::vector<int>> linear_parents(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> gp_parents(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    linear_parents[static_cast<std::size_t>(i)] = truth.expert.parents(i);
    gp_parents[static_cast<std::size_t>(i)] = truth.gp.gp().parents(i);
  }
  const auto order = topological_order([&] {
    AdjacencyMatrix u = truth.expert.linear();
    for (int i = 0; i < n; ++i)
      for (int j : gp_parents[static_cast<std::size_t>(i)]) u.set_edge(j, i);
    return u;
  }());

  Eigen::MatrixXd data(rows, n);
  for (int r = 0; r < rows; ++r) {
    for (int i : order) {
      const auto& lp = linear_parents[static_cast<std::size_t>(i)];
      const auto& gpp = gp_parents[static_cast<std::size_t>(i)];
      const double z = standard(rng);
      if (lp.empty() && gpp.empty()) {
        data(r, i) = root_sd * z;
        continue;
      }
      const auto& term = truth.linear[static_cast<std::size_t>(i)];
      double value = term.intercept;
      for (std::size_t k = 0; k < lp.size(); ++k) value += term.weights[k] * data(r, lp[k]);
      for (int j : gpp) value += std::cos(2.0 * std::numbers::pi * data(r, j));
      data(r, i) = value + noise_sd * z;
    }
  }
  return data;
}

}  // namespace

Dataset sample_dataset(const GroundTruth& truth, const GenConfig& config) {
  config.validate();
  if (truth.expert.size() != config.n) throw ContractViolation("sample_dataset: truth size does not match config");
  Dataset ds;
  ds.names = truth.expert.node_names();
  ds.train = sample_split(truth, config, config.sizes.train, 1);
  ds.validation = sample_split(truth, config, config.sizes.validation, 2);
  ds.test = sample_split(truth, config, config.sizes.test, 3);
  return ds;
}

GroundTruth five_node_example() {
  const auto linear = AdjacencyMatrix::from_rows({{0, 0, 0, 0, 0},
                                                  {0, 0, 0, 0, 0},
                                                  {1, 1, 0, 0, 0},
                                                  {1, 1, 1, 0, 0},
                                                  {1, 0, 0, 0, 0}});
  const auto gp = AdjacencyMatrix::from_rows({{0, 0, 0, 0, 0},
                                              {0, 0, 0, 0, 0},
                                              {1, 1, 0, 0, 0},
                                              {1, 0, 0, 0, 0},
                                              {1, 1, 0, 1, 0}});
  return make_ground_truth(ExpertGraph(linear), GpEdgeSet(gp));
}

}  // namespace sebn
