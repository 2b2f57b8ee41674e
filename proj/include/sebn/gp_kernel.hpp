#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sebn/linalg.hpp"

namespace sebn {

/// Squared-exponential kernel hyperparameters for one parent.
/// `amplitude` is the output variance, `lengthscale` is in parent units.
struct SeKernelParams {
  double amplitude = 0.2;
  double lengthscale = 0.4;

  bool operator==(const SeKernelParams&) const = default;
};

/// Additive covariance: one SE term per candidate GP parent plus fixed noise.
struct CovarianceModel {
  std::vector<SeKernelParams> per_parent;
  double noise_variance = 0.01;
};

/// Partial derivatives of the GP log marginal likelihood.
struct MarginalGradient {
  double value = 0.0;
  Eigen::VectorXd d_log_amplitude;
  Eigen::VectorXd d_log_lengthscale;
  Eigen::VectorXd d_weights;
  double d_intercept = 0.0;
};

/// (x_p - x_q)^2 for every parent column, computed once per input set and
/// reused across hyperparameter updates.
struct SquaredDistances {
  std::vector<Eigen::MatrixXd> per_parent;

  /// Rows index `a` samples, columns index `b` samples. `a` and `b` hold one
  /// column per parent.
  static SquaredDistances between(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
  std::size_t parent_count() const { return per_parent.size(); }
};

/// sigma^2 exp(-d2 / (2 l^2)) elementwise.
Eigen::MatrixXd se_kernel_from_distances(const Eigen::MatrixXd& d2, const SeKernelParams& params);

Eigen::MatrixXd se_kernel_matrix(const Eigen::VectorXd& x, const SeKernelParams& params);

/// Sum of per-parent SE matrices plus noise_variance * I. `parent_columns` is N x p.
Eigen::MatrixXd additive_covariance(const Eigen::MatrixXd& parent_columns, const CovarianceModel& model);

/// -1/2 (r' C^{-1} r + log det C + N log 2 pi).
double gp_marginal_loglik(const Eigen::VectorXd& residual, const Eigen::MatrixXd& cov);

/// Gradient of the marginal likelihood of `residual = y - X w - b` with
/// respect to log-amplitudes, log-lengthscales, linear weights and intercept.
/// `linear_inputs` is N x k (k may be zero).
MarginalGradient gp_marginal_grad(const Eigen::VectorXd& residual, const Eigen::MatrixXd& parent_columns,
                                  const CovarianceModel& model, const Eigen::MatrixXd& linear_inputs);

/// Joint log density of the test residuals under the GP posterior predictive
/// conditioned on the training residuals.
double gp_posterior_predictive_loglik(const Eigen::VectorXd& train_residual, const Eigen::VectorXd& test_residual,
                                      const Eigen::MatrixXd& train_columns, const Eigen::MatrixXd& test_columns,
                                      const CovarianceModel& model);

/// Training covariance factorized at one hyperparameter setting. This is the
/// workhorse of fitting: one instance per optimizer iterate.
///
/// With no parents the covariance is noise_variance * I and everything is
/// evaluated in closed form without a factorization.
class GpTrainState {
 public:
  GpTrainState(const SquaredDistances& train, std::span<const SeKernelParams> params, double noise_variance,
               const Eigen::VectorXd& residual);

  double log_marginal() const { return log_marginal_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }

  MarginalGradient gradient(const SquaredDistances& train, const Eigen::MatrixXd& linear_inputs) const;

  /// `cross` is test x train, `test` is test x test.
  double predictive_loglik(const SquaredDistances& cross, const SquaredDistances& test,
                           const Eigen::VectorXd& test_residual) const;

 private:
  bool diagonal() const { return params_.empty(); }

  std::vector<SeKernelParams> params_;
  double noise_variance_;
  std::vector<Eigen::MatrixXd> kernels_;
  std::optional<SpdFactor> factor_;
  Eigen::VectorXd residual_;
  Eigen::VectorXd alpha_;
  double log_marginal_ = 0.0;
};

}  // namespace sebn
