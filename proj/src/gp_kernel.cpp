#include "sebn/gp_kernel.hpp"

#include <cmath>
#include <numbers>

#include "sebn/errors.hpp"

namespace sebn {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

void check_params(const SeKernelParams& p) {
  if (!std::isfinite(p.amplitude) || !std::isfinite(p.lengthscale) || p.amplitude < 0.0 || p.lengthscale <= 0.0)
    throw ContractViolation("SE kernel: amplitude must be >= 0 and lengthscale > 0");
}

void check_model(const CovarianceModel& model, Eigen::Index parents) {
  if (static_cast<Eigen::Index>(model.per_parent.size()) != parents)
    throw ContractViolation("covariance model: one SE term per parent column is required");
  if (!(model.noise_variance > 0.0) || !std::isfinite(model.noise_variance))
    throw ContractViolation("covariance model: noise variance must be positive");
  for (const auto& p : model.per_parent) check_params(p);
}

Eigen::MatrixXd sum_kernels(const SquaredDistances& d2, std::span<const SeKernelParams> params, Eigen::Index rows,
                            Eigen::Index cols) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(rows, cols);
  for (std::size_t j = 0; j < params.size(); ++j) k += se_kernel_from_distances(d2.per_parent[j], params[j]);
  return k;
}

}  // namespace

SquaredDistances SquaredDistances::between(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols()) throw ContractViolation("SquaredDistances: parent column count mismatch");
  if (!all_finite(a) || !all_finite(b)) throw ContractViolation("SquaredDistances: non-finite input");
  SquaredDistances out;
  out.per_parent.reserve(static_cast<std::size_t>(a.cols()));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Eigen::MatrixXd diff = a.col(j).replicate(1, b.rows()) - b.col(j).transpose().replicate(a.rows(), 1);
    out.per_parent.push_back(diff.array().square().matrix());
  }
  return out;
}

Eigen::MatrixXd se_kernel_from_distances(const Eigen::MatrixXd& d2, const SeKernelParams& params) {
  const double scale = -0.5 / (params.lengthscale * params.lengthscale);
  return (params.amplitude * (d2.array() * scale).exp()).matrix();
}

Eigen::MatrixXd se_kernel_matrix(const Eigen::VectorXd& x, const SeKernelParams& params) {
  if (x.size() < 1) throw ContractViolation("se_kernel_matrix: need at least one input");
  if (!all_finite(x)) throw ContractViolation("se_kernel_matrix: non-finite input");
  check_params(params);
  return se_kernel_from_distances(SquaredDistances::between(x, x).per_parent.front(), params);
}

Eigen::MatrixXd additive_covariance(const Eigen::MatrixXd& parent_columns, const CovarianceModel& model) {
  check_model(model, parent_columns.cols());
  const Eigen::Index n = parent_columns.rows();
  Eigen::MatrixXd cov = sum_kernels(SquaredDistances::between(parent_columns, parent_columns), model.per_parent, n, n);
  cov.diagonal().array() += model.noise_variance;
  return cov;
}

double gp_marginal_loglik(const Eigen::VectorXd& residual, const Eigen::MatrixXd& cov) {
  if (!all_finite(residual)) throw ContractViolation("gp_marginal_loglik: non-finite residual");
  return gaussian_log_density(residual, SpdFactor(cov));
}

MarginalGradient gp_marginal_grad(const Eigen::VectorXd& residual, const Eigen::MatrixXd& parent_columns,
                                  const CovarianceModel& model, const Eigen::MatrixXd& linear_inputs) {
  check_model(model, parent_columns.cols());
  if (parent_columns.rows() != residual.size() || linear_inputs.rows() != residual.size())
    throw ContractViolation("gp_marginal_grad: row count mismatch");
  const auto d2 = SquaredDistances::between(parent_columns, parent_columns);
  GpTrainState state(d2, model.per_parent, model.noise_variance, residual);
  return state.gradient(d2, linear_inputs);
}

double gp_posterior_predictive_loglik(const Eigen::VectorXd& train_residual, const Eigen::VectorXd& test_residual,
                                      const Eigen::MatrixXd& train_columns, const Eigen::MatrixXd& test_columns,
                                      const CovarianceModel& model) {
  check_model(model, train_columns.cols());
  if (test_columns.cols() != train_columns.cols()) throw ContractViolation("predictive: parent column mismatch");
  if (train_columns.rows() != train_residual.size() || test_columns.rows() != test_residual.size())
    throw ContractViolation("predictive: row count mismatch");
  const auto train = SquaredDistances::between(train_columns, train_columns);
  GpTrainState state(train, model.per_parent, model.noise_variance, train_residual);
  return state.predictive_loglik(SquaredDistances::between(test_columns, train_columns),
                                 SquaredDistances::between(test_columns, test_columns), test_residual);
}

GpTrainState::GpTrainState(const SquaredDistances& train, std::span<const SeKernelParams> params,
                           double noise_variance, const Eigen::VectorXd& residual)
    : params_(params.begin(), params.end()), noise_variance_(noise_variance), residual_(residual) {
  if (train.parent_count() != params_.size()) throw ContractViolation("GpTrainState: parameter count mismatch");
  if (!all_finite(residual)) throw ContractViolation("GpTrainState: non-finite residual");
  const Eigen::Index n = residual.size();
  const double dn = static_cast<double>(n);

  if (diagonal()) {
    alpha_ = residual / noise_variance_;
    log_marginal_ = -0.5 * (residual.squaredNorm() / noise_variance_ + dn * std::log(noise_variance_) + dn * kLog2Pi);
    return;
  }

  kernels_.reserve(params_.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < params_.size(); ++j) {
    if (train.per_parent[j].rows() != n) throw ContractViolation("GpTrainState: distance matrix size mismatch");
    kernels_.push_back(se_kernel_from_distances(train.per_parent[j], params_[j]));
    cov += kernels_.back();
  }
  cov.diagonal().array() += noise_variance_;
  factor_.emplace(cov);
  alpha_ = factor_->solve(residual);
  log_marginal_ = -0.5 * (residual.dot(alpha_) + factor_->log_det() + dn * kLog2Pi);
}

MarginalGradient GpTrainState::gradient(const SquaredDistances& train, const Eigen::MatrixXd& linear_inputs) const {
  MarginalGradient g;
  g.value = log_marginal_;
  g.d_weights = linear_inputs.transpose() * alpha_;
  g.d_intercept = alpha_.sum();
  const auto p = static_cast<Eigen::Index>(params_.size());
  g.d_log_amplitude = Eigen::VectorXd::Zero(p);
  g.d_log_lengthscale = Eigen::VectorXd::Zero(p);
  if (diagonal()) return g;

  // d/dtheta = 1/2 (alpha' dK alpha - tr(K^{-1} dK))
  const Eigen::MatrixXd inv = factor_->inverse();
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto& kj = kernels_[static_cast<std::size_t>(j)];
    g.d_log_amplitude(j) = 0.5 * (alpha_.dot(kj * alpha_) - (inv.array() * kj.array()).sum());
    const double l = params_[static_cast<std::size_t>(j)].lengthscale;
    const Eigen::MatrixXd dk = (kj.array() * train.per_parent[static_cast<std::size_t>(j)].array() / (l * l)).matrix();
    g.d_log_lengthscale(j) = 0.5 * (alpha_.dot(dk * alpha_) - (inv.array() * dk.array()).sum());
  }
  return g;
}

double GpTrainState::predictive_loglik(const SquaredDistances& cross, const SquaredDistances& test,
                                       const Eigen::VectorXd& test_residual) const {
  const Eigen::Index m = test_residual.size();
  if (m == 0) return 0.0;
  if (!all_finite(test_residual)) throw ContractViolation("predictive_loglik: non-finite residual");
  if (cross.parent_count() != params_.size() || test.parent_count() != params_.size())
    throw ContractViolation("predictive_loglik: parameter count mismatch");

  if (diagonal()) {
    const double dm = static_cast<double>(m);
    return -0.5 * (test_residual.squaredNorm() / noise_variance_ + dm * std::log(noise_variance_) + dm * kLog2Pi);
  }

  const Eigen::Index n = residual_.size();
  Eigen::MatrixXd cov = sum_kernels(test, params_, m, m);
  cov.diagonal().array() += noise_variance_;
  if (n == 0) return gaussian_log_density(test_residual, SpdFactor(cov));

  const Eigen::MatrixXd k_cross = sum_kernels(cross, params_, m, n);
  const Eigen::VectorXd mean = k_cross * alpha_;
  const Eigen::MatrixXd v = factor_->solve_lower(k_cross.transpose());
  cov.noalias() -= v.transpose() * v;
  return gaussian_log_density(test_residual - mean, SpdFactor(cov));
}

}  // namespace sebn
