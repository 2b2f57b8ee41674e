#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sebn/dataset.hpp"
#include "sebn/graph.hpp"

namespace sebn {

/// Linear-Gaussian Bayesian network: structure plus per-node least-squares
/// weights, intercept and residual variance.
struct LgbnModel {
  ExpertGraph graph;
  std::vector<LinearTerm> terms;
  std::vector<double> residual_variance;
};

/// BIC of one node given its parents under a linear-Gaussian CPD.
double lgbn_local_bic(const Eigen::MatrixXd& data, int node, const std::vector<int>& parents);

/// Greedy hill climbing (add / delete / reverse one edge) on BIC, starting
/// from the empty graph. Among equally good moves the first in (parent,
/// child, kind) lexicographic order wins.
LgbnModel fit_expert_graph(const Eigen::MatrixXd& train, std::vector<std::string> names = {});

/// Least-squares parameters for a given structure.
LgbnModel fit_lgbn_parameters(const Eigen::MatrixXd& train, const ExpertGraph& graph);

/// Sum over nodes and rows of the Gaussian residual log density.
double lgbn_test_loglik(const LgbnModel& model, const Eigen::MatrixXd& test);

}  // namespace sebn
