#include "sebn/lgbn.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "sebn/errors.hpp"

namespace sebn {

namespace {

constexpr double kMinVariance = 1e-12;
constexpr double kMinImprovement = 1e-9;

double gaussian_loglik_mle(double residual_variance, double rows) {
  return -0.5 * rows * (std::log(2.0 * std::numbers::pi * residual_variance) + 1.0);
}

}  // namespace

double lgbn_local_bic(const Eigen::MatrixXd& data, int node, const std::vector<int>& parents) {
  const auto fit = least_squares(data, node, parents);
  const double rows = static_cast<double>(data.rows());
  const double free_params = static_cast<double>(parents.size()) + 2.0;
  return gaussian_loglik_mle(std::max(fit.residual_variance, kMinVariance), rows) - 0.5 * free_params * std::log(rows);
}

LgbnModel fit_lgbn_parameters(const Eigen::MatrixXd& train, const ExpertGraph& graph) {
  if (train.cols() != graph.size()) throw ContractViolation("fit_lgbn_parameters: data width mismatch");
  LgbnModel model{graph, {}, {}};
  for (int i = 0; i < graph.size(); ++i) {
    const auto fit = least_squares(train, i, graph.parents(i));
    model.terms.push_back(fit.term);
    model.residual_variance.push_back(std::max(fit.residual_variance, kMinVariance));
  }
  return model;
}

LgbnModel fit_expert_graph(const Eigen::MatrixXd& train, std::vector<std::string> names) {
  const int n = static_cast<int>(train.cols());
  if (n < 2) throw ContractViolation("fit_expert_graph: need at least two columns");
  if (train.rows() < 3) throw ContractViolation("fit_expert_graph: need at least three rows");
  for (int c = 0; c < n; ++c) {
    const Eigen::VectorXd col = train.col(c);
    if ((col.array() - col.mean()).square().sum() == 0.0)
      throw ContractViolation("fit_expert_graph: column " + std::to_string(c + 1) +
                              " is constant; drop constant columns before learning");
  }
  if (names.empty()) names = default_node_names(n);

  AdjacencyMatrix edges(n);
  std::map<std::pair<int, std::vector<int>>, double> score_cache;
  auto local = [&](int node, const AdjacencyMatrix& g) {
    auto key = std::make_pair(node, g.parents(node));
    auto it = score_cache.find(key);
    if (it != score_cache.end()) return it->second;
    const double s = lgbn_local_bic(train, node, key.second);
    score_cache.emplace(std::move(key), s);
    return s;
  };

  enum class Move { Add, Delete, Reverse };
  const int max_moves = 10 * n * n;
  for (int step = 0; step < max_moves; ++step) {
    double best_delta = kMinImprovement;
    int best_parent = -1, best_child = -1;
    Move best_move = Move::Add;

    for (int parent = 0; parent < n; ++parent) {
      for (int child = 0; child < n; ++child) {
        if (parent == child) continue;
        const bool present = edges.has_edge(parent, child);
        for (Move move : {Move::Add, Move::Delete, Move::Reverse}) {
          AdjacencyMatrix candidate = edges;
          double delta = 0.0;
          if (move == Move::Add) {
            if (present || edges.has_edge(child, parent)) continue;
            candidate.set_edge(parent, child);
            if (!check_acyclic(candidate).ok) continue;
            delta = local(child, candidate) - local(child, edges);
          } else if (move == Move::Delete) {
            if (!present) continue;
            candidate.set_edge(parent, child, false);
            delta = local(child, candidate) - local(child, edges);
          } else {
            if (!present) continue;
            candidate.set_edge(parent, child, false);
            candidate.set_edge(child, parent);
            if (!check_acyclic(candidate).ok) continue;
            delta = local(child, candidate) - local(child, edges) + local(parent, candidate) - local(parent, edges);
          }
          if (delta > best_delta) {
            best_delta = delta;
            best_parent = parent;
            best_child = child;
            best_move = move;
          }
        }
      }
    }
    if (best_parent < 0) break;
    switch (best_move) {
      case Move::Add:
        edges.set_edge(best_parent, best_child);
        break;
      case Move::Delete:
        edges.set_edge(best_parent, best_child, false);
        break;
      case Move::Reverse:
        edges.set_edge(best_parent, best_child, false);
        edges.set_edge(best_child, best_parent);
        break;
    }
  }
  return fit_lgbn_parameters(train, ExpertGraph(std::move(edges), std::move(names)));
}

double lgbn_test_loglik(const LgbnModel& model, const Eigen::MatrixXd& test) {
  if (test.rows() == 0) return 0.0;
  if (test.cols() != model.graph.size()) throw ContractViolation("lgbn_test_loglik: data width mismatch");
  const double log_2pi = std::log(2.0 * std::numbers::pi);
  double total = 0.0;
  for (int i = 0; i < model.graph.size(); ++i) {
    const double var = model.residual_variance[static_cast<std::size_t>(i)];
    const Eigen::VectorXd r = linear_residual(test, i, model.graph.parents(i), model.terms[static_cast<std::size_t>(i)]);
    total += -0.5 * (r.squaredNorm() / var + static_cast<double>(r.size()) * (std::log(var) + log_2pi));
  }
  return total;
}

}  // namespace sebn
