#include "sebn/cpd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sebn/errors.hpp"

namespace sebn {

std::string to_string(LearningMode mode) {
  switch (mode) {
    case LearningMode::OracleLinear:
      return "oracle-linear";
    case LearningMode::TwoStep:
      return "two-step";
    case LearningMode::OneStep:
      return "one-step";
  }
  return "unknown";
}

LearningMode learning_mode_from_string(const std::string& text) {
  if (text == "oracle-linear" || text == "oracle") return LearningMode::OracleLinear;
  if (text == "two-step") return LearningMode::TwoStep;
  if (text == "one-step") return LearningMode::OneStep;
  throw ContractViolation("unknown learning mode '" + text + "' (expected oracle-linear, two-step or one-step)");
}

void NodeCpd::validate() const {
  if (weights.size() != linear_parents.size()) throw ContractViolation("NodeCpd: one weight per linear parent");
  if (gp_params.size() != gp_candidates.size()) throw ContractViolation("NodeCpd: one SE term per GP candidate");
  if (!(noise_variance > 0.0)) throw ContractViolation("NodeCpd: noise variance must be positive");
}

void TrainConfig::validate() const {
  if (max_iterations < 1) throw ContractViolation("TrainConfig: max_iterations must be positive");
  if (patience < 1 || patience > max_iterations)
    throw ContractViolation("TrainConfig: patience must be in [1, max_iterations]");
  if (!(hs_weight >= 0.0)) throw ContractViolation("TrainConfig: hs_weight must be nonnegative");
  if (!(init_amplitude > 0.0) || !(init_lengthscale > 0.0) || !(step_size > 0.0))
    throw ContractViolation("TrainConfig: initial values and step size must be positive");
  if (hs_scales) hs_scales->validate();
}

std::vector<double> candidate_scales(const NodeCpd& cpd, const HsScaleMap& scales) {
  std::vector<double> out;
  out.reserve(cpd.gp_candidates.size());
  for (int c : cpd.gp_candidates) {
    const bool on_expert_edge = std::find(cpd.linear_parents.begin(), cpd.linear_parents.end(), c) !=
                                cpd.linear_parents.end();
    out.push_back(on_expert_edge ? scales.tau_expert : scales.tau_nonexpert);
  }
  return out;
}

namespace {

std::vector<double> amplitudes_of(const NodeCpd& cpd) {
  std::vector<double> out;
  out.reserve(cpd.gp_params.size());
  for (const auto& p : cpd.gp_params) out.push_back(p.amplitude);
  return out;
}

LinearTerm linear_term_of(const NodeCpd& cpd) { return {cpd.weights, cpd.intercept}; }

double prior_term(const NodeCpd& cpd, const TrainConfig& config) {
  if (!config.hs_scales || cpd.gp_params.empty()) return 0.0;
  const auto amplitudes = amplitudes_of(cpd);
  return config.hs_weight * hs_log_prior(amplitudes, candidate_scales(cpd, *config.hs_scales));
}

/// Per-parameter adaptive first-order ascent (first and second moment estimates).
class AdamAscent {
 public:
  AdamAscent(Eigen::Index size, double step) : m_(Eigen::VectorXd::Zero(size)), v_(Eigen::VectorXd::Zero(size)), step_(step) {}

  void step(Eigen::VectorXd& theta, const Eigen::VectorXd& grad, const Eigen::Array<bool, Eigen::Dynamic, 1>& free) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, t_);
    const double c2 = 1.0 - std::pow(kBeta2, t_);
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      if (!free(i)) continue;
      m_(i) = kBeta1 * m_(i) + (1.0 - kBeta1) * grad(i);
      v_(i) = kBeta2 * v_(i) + (1.0 - kBeta2) * grad(i) * grad(i);
      theta(i) += step_ * (m_(i) / c1) / (std::sqrt(v_(i) / c2) + kEpsilon);
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
  double step_;
  int t_ = 0;
};

// Parameter vector layout: [log amplitudes | log lengthscales | weights | intercept].
struct Layout {
  Eigen::Index gp;
  Eigen::Index linear;
  Eigen::Index size() const { return 2 * gp + linear + 1; }
};

Eigen::VectorXd pack(const NodeCpd& cpd, const Layout& layout) {
  Eigen::VectorXd theta(layout.size());
  for (Eigen::Index j = 0; j < layout.gp; ++j) {
    theta(j) = std::log(cpd.gp_params[static_cast<std::size_t>(j)].amplitude);
    theta(layout.gp + j) = std::log(cpd.gp_params[static_cast<std::size_t>(j)].lengthscale);
  }
  for (Eigen::Index k = 0; k < layout.linear; ++k) theta(2 * layout.gp + k) = cpd.weights[static_cast<std::size_t>(k)];
  theta(layout.size() - 1) = cpd.intercept;
  return theta;
}

void unpack(const Eigen::VectorXd& theta, const Layout& layout, NodeCpd& cpd) {
  for (Eigen::Index j = 0; j < layout.gp; ++j) {
    cpd.gp_params[static_cast<std::size_t>(j)].amplitude = std::exp(theta(j));
    cpd.gp_params[static_cast<std::size_t>(j)].lengthscale = std::exp(theta(layout.gp + j));
  }
  for (Eigen::Index k = 0; k < layout.linear; ++k) cpd.weights[static_cast<std::size_t>(k)] = theta(2 * layout.gp + k);
  cpd.intercept = theta(layout.size() - 1);
}

/// Inputs of one node fit that do not change across iterates.
struct NodeProblem {
  NodeProblem(const NodeCpd& cpd, const Eigen::MatrixXd& train, const Eigen::MatrixXd& eval)
      : train(train), eval(eval) {
    const Eigen::MatrixXd cand_train = select_columns(train, cpd.gp_candidates);
    const Eigen::MatrixXd cand_eval = select_columns(eval, cpd.gp_candidates);
    linear_train = select_columns(train, cpd.linear_parents);
    train_d2 = SquaredDistances::between(cand_train, cand_train);
    cross_d2 = SquaredDistances::between(cand_eval, cand_train);
    eval_d2 = SquaredDistances::between(cand_eval, cand_eval);
  }

  const Eigen::MatrixXd& train;
  const Eigen::MatrixXd& eval;
  Eigen::MatrixXd linear_train;
  SquaredDistances train_d2;
  SquaredDistances cross_d2;
  SquaredDistances eval_d2;
};

/// Drops candidates whose amplitude is exactly zero; their SE term vanishes.
NodeCpd without_disabled_terms(const NodeCpd& cpd) {
  NodeCpd out = cpd;
  out.gp_candidates.clear();
  out.gp_params.clear();
  for (std::size_t j = 0; j < cpd.gp_candidates.size(); ++j) {
    if (cpd.gp_params[j].amplitude > 0.0) {
      out.gp_candidates.push_back(cpd.gp_candidates[j]);
      out.gp_params.push_back(cpd.gp_params[j]);
    }
  }
  return out;
}

void check_columns(const NodeCpd& cpd, const Eigen::MatrixXd& data, const char* what) {
  auto in_range = [&](int c) { return c >= 0 && c < data.cols(); };
  bool ok = in_range(cpd.node);
  for (int c : cpd.linear_parents) ok = ok && in_range(c);
  for (int c : cpd.gp_candidates) ok = ok && in_range(c);
  if (!ok) throw ContractViolation(std::string(what) + ": data does not cover the node and its parents");
}

std::vector<double> scales_or_empty(const NodeCpd& cpd, const TrainConfig& config) {
  return config.hs_scales ? candidate_scales(cpd, *config.hs_scales) : std::vector<double>{};
}

// Chain rule through amplitude = exp(theta): d/dtheta = amplitude * d/damplitude.
Eigen::VectorXd assemble_gradient(const MarginalGradient& g, const NodeCpd& cpd, const std::vector<double>& scales,
                                  const TrainConfig& config, const Layout& layout) {
  Eigen::VectorXd grad(layout.size());
  grad.head(layout.gp) = g.d_log_amplitude;
  grad.segment(layout.gp, layout.gp) = g.d_log_lengthscale;
  grad.segment(2 * layout.gp, layout.linear) = g.d_weights;
  grad(layout.size() - 1) = g.d_intercept;
  if (config.hs_scales && layout.gp > 0) {
    const auto amplitudes = amplitudes_of(cpd);
    const auto prior_grad = hs_log_prior_grad(amplitudes, scales);
    for (Eigen::Index j = 0; j < layout.gp; ++j)
      grad(j) += config.hs_weight * amplitudes[static_cast<std::size_t>(j)] * prior_grad[static_cast<std::size_t>(j)];
  }
  return grad;
}

}  // namespace

Eigen::VectorXd node_objective_gradient(const NodeCpd& cpd, const Eigen::MatrixXd& train, const TrainConfig& config) {
  cpd.validate();
  check_columns(cpd, train, "node_objective_gradient");
  const Layout layout{static_cast<Eigen::Index>(cpd.gp_candidates.size()),
                      static_cast<Eigen::Index>(cpd.linear_parents.size())};
  const Eigen::MatrixXd cand = select_columns(train, cpd.gp_candidates);
  const auto d2 = SquaredDistances::between(cand, cand);
  const GpTrainState state(d2, cpd.gp_params, cpd.noise_variance,
                           linear_residual(train, cpd.node, cpd.linear_parents, linear_term_of(cpd)));
  return assemble_gradient(state.gradient(d2, select_columns(train, cpd.linear_parents)), cpd,
                           scales_or_empty(cpd, config), config, layout);
}

double node_objective(const NodeCpd& cpd, const Eigen::MatrixXd& train, const TrainConfig& config) {
  cpd.validate();
  check_columns(cpd, train, "node_objective");
  const Eigen::MatrixXd cand = select_columns(train, cpd.gp_candidates);
  const GpTrainState state(SquaredDistances::between(cand, cand), cpd.gp_params, cpd.noise_variance,
                           linear_residual(train, cpd.node, cpd.linear_parents, linear_term_of(cpd)));
  return state.log_marginal() + prior_term(cpd, config);
}

double node_test_loglik(const NodeCpd& cpd, const Eigen::MatrixXd& train, const Eigen::MatrixXd& test) {
  cpd.validate();
  if (test.rows() == 0) return 0.0;
  check_columns(cpd, train, "node_test_loglik");
  check_columns(cpd, test, "node_test_loglik");
  const NodeCpd active = without_disabled_terms(cpd);
  const NodeProblem problem(active, train, test);
  const LinearTerm term = linear_term_of(active);
  const GpTrainState state(problem.train_d2, active.gp_params, active.noise_variance,
                           linear_residual(train, active.node, active.linear_parents, term));
  return state.predictive_loglik(problem.cross_d2, problem.eval_d2,
                                 linear_residual(test, active.node, active.linear_parents, term));
}

FitResult fit_node(int node, const Eigen::MatrixXd& train, const Eigen::MatrixXd& validation,
                   const ExpertGraph& expert, const std::vector<int>& candidates, double noise_variance,
                   const TrainConfig& config, const std::optional<LinearTerm>& oracle_linear) {
  config.validate();
  if (train.rows() == 0) throw ContractViolation("fit_node: empty training data");
  if (node < 0 || node >= expert.size()) throw ContractViolation("fit_node: node outside expert graph");
  if (train.cols() != expert.size() || validation.cols() != expert.size())
    throw ContractViolation("fit_node: data width does not match expert graph");
  const NodeSet descendants = expert.descendants(node);
  for (int c : candidates) {
    if (c == node || descendants.contains(c) || c < 0 || c >= expert.size())
      throw ContractViolation("fit_node: GP candidate " + std::to_string(c + 1) + " does not precede node " +
                              std::to_string(node + 1));
  }

  NodeCpd cpd;
  cpd.node = node;
  cpd.linear_parents = expert.parents(node);
  cpd.weights.assign(cpd.linear_parents.size(), 0.0);
  cpd.gp_candidates = candidates;
  cpd.gp_params.assign(candidates.size(), SeKernelParams{config.init_amplitude, config.init_lengthscale});
  cpd.noise_variance = noise_variance;

  switch (config.mode) {
    case LearningMode::OracleLinear:
      if (!oracle_linear) throw ContractViolation("fit_node: oracle-linear mode needs the true linear term");
      if (oracle_linear->weights.size() != cpd.linear_parents.size())
        throw ContractViolation("fit_node: oracle weights do not match the expert parents");
      cpd.weights = oracle_linear->weights;
      cpd.intercept = oracle_linear->intercept;
      break;
    case LearningMode::TwoStep: {
      const auto ols = least_squares(train, node, cpd.linear_parents);
      cpd.weights = ols.term.weights;
      cpd.intercept = ols.term.intercept;
      break;
    }
    case LearningMode::OneStep:
      break;
  }
  cpd.validate();

  const Layout layout{static_cast<Eigen::Index>(candidates.size()), static_cast<Eigen::Index>(cpd.linear_parents.size())};
  Eigen::Array<bool, Eigen::Dynamic, 1> free = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(layout.size(), true);
  if (config.mode != LearningMode::OneStep) free.tail(layout.linear + 1).setConstant(false);

  const NodeProblem problem(cpd, train, validation);
  const std::vector<double> scales = scales_or_empty(cpd, config);

  Eigen::VectorXd theta = pack(cpd, layout);
  AdamAscent optimizer(layout.size(), config.step_size);

  FitResult result;
  result.cpd = cpd;
  result.best_val_loglik = -std::numeric_limits<double>::infinity();
  int since_improvement = 0;

  for (int iteration = 0; iteration <= config.max_iterations; ++iteration) {
    unpack(theta, layout, cpd);
    const LinearTerm term = linear_term_of(cpd);
    std::optional<GpTrainState> state;
    double val = 0.0;
    try {
      state.emplace(problem.train_d2, cpd.gp_params, noise_variance,
                    linear_residual(train, node, cpd.linear_parents, term));
      val = state->predictive_loglik(problem.cross_d2, problem.eval_d2,
                                     linear_residual(validation, node, cpd.linear_parents, term));
    } catch (const NumericalError&) {
      if (iteration == 0) throw;
      break;  // the optimizer walked into an ill-conditioned region; keep the best iterate so far
    }
    result.val_trace.push_back(val);

    if (val > result.best_val_loglik) {
      result.best_val_loglik = val;
      result.best_iteration = iteration;
      result.cpd = cpd;
      since_improvement = 0;
    } else if (++since_improvement >= config.patience) {
      break;
    }
    if (iteration == config.max_iterations) break;

    const Eigen::VectorXd grad =
        assemble_gradient(state->gradient(problem.train_d2, problem.linear_train), cpd, scales, config, layout);
    if (!grad.allFinite()) break;
    optimizer.step(theta, grad, free);
  }
  return result;
}

}  // namespace sebn
