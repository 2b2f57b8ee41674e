#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sebn/dataset.hpp"
#include "sebn/gp_kernel.hpp"
#include "sebn/graph.hpp"
#include "sebn/horseshoe.hpp"

namespace sebn {

/// How linear parameters are treated while GP hyperparameters are fitted.
enum class LearningMode {
  OracleLinear,  ///< weights and intercept fixed to supplied truth
  TwoStep,       ///< least squares first, then frozen
  OneStep,       ///< optimized jointly with the GP terms
};

std::string to_string(LearningMode mode);
LearningMode learning_mode_from_string(const std::string& text);

/// Semi-parametric conditional density of one node:
/// x = w . x_linear + b + sum_j f_j(x_j) + eps, f_j ~ GP(0, SE(amplitude_j, lengthscale_j)),
/// eps ~ N(0, noise_variance).
struct NodeCpd {
  int node = 0;
  std::vector<int> linear_parents;
  std::vector<double> weights;
  double intercept = 0.0;
  std::vector<int> gp_candidates;
  std::vector<SeKernelParams> gp_params;
  double noise_variance = 0.01;

  void validate() const;
  bool operator==(const NodeCpd&) const = default;
};

struct TrainConfig {
  LearningMode mode = LearningMode::OneStep;
  double hs_weight = 1.0;
  std::optional<HsScaleMap> hs_scales;  ///< none disables the prior term
  int max_iterations = 200;
  int patience = 20;
  double init_amplitude = 0.2;
  double init_lengthscale = 0.4;
  double step_size = 0.05;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Horseshoe scale of each GP candidate: expert scale when the candidate is
/// also a linear parent, non-expert scale otherwise.
std::vector<double> candidate_scales(const NodeCpd& cpd, const HsScaleMap& scales);

/// GP marginal log-likelihood of the training residuals plus w_HS times the
/// Horseshoe log-prior (omitted when no scales are configured).
double node_objective(const NodeCpd& cpd, const Eigen::MatrixXd& train, const TrainConfig& config);

/// Gradient of node_objective, ordered [log amplitudes | log lengthscales | weights | intercept].
Eigen::VectorXd node_objective_gradient(const NodeCpd& cpd, const Eigen::MatrixXd& train, const TrainConfig& config);

struct FitResult {
  NodeCpd cpd;                       ///< iterate with the best validation log-likelihood
  double best_val_loglik = 0.0;
  int best_iteration = 0;            ///< 0 is the initial point
  std::vector<double> val_trace;     ///< validation log-likelihood of every visited iterate
};

/// Fits one node by full-batch adaptive gradient ascent on node_objective
/// over `train`, keeping the iterate that scores best on `validation`
/// and stopping after `patience` iterates without improvement.
///
/// `oracle_linear` must be provided in OracleLinear mode.
FitResult fit_node(int node, const Eigen::MatrixXd& train, const Eigen::MatrixXd& validation,
                   const ExpertGraph& expert, const std::vector<int>& candidates, double noise_variance,
                   const TrainConfig& config, const std::optional<LinearTerm>& oracle_linear = std::nullopt);

/// Joint log density of the evaluation rows under the GP posterior predictive
/// conditioned on the training rows. Zero rows give 0.
double node_test_loglik(const NodeCpd& cpd, const Eigen::MatrixXd& train, const Eigen::MatrixXd& test);

}  // namespace sebn
