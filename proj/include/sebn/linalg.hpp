#pragma once

#include <Eigen/Dense>

namespace sebn {

/// Cholesky factor of a symmetric positive-definite matrix.
///
/// When the plain factorization fails, a diagonal jitter of 1e-8 times the
/// mean diagonal is added and escalated tenfold, at most three retries.
/// Persistent failure raises NumericalError.
class SpdFactor {
 public:
  explicit SpdFactor(const Eigen::MatrixXd& matrix);

  Eigen::Index size() const { return lower_.rows(); }
  double log_det() const { return log_det_; }
  /// Diagonal jitter that was needed, 0 if the matrix factorized as given.
  double jitter() const { return jitter_; }
  const Eigen::MatrixXd& lower() const { return lower_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  /// L^{-1} B.
  Eigen::MatrixXd solve_lower(const Eigen::MatrixXd& rhs) const;
  /// Full symmetric inverse.
  Eigen::MatrixXd inverse() const;

 private:
  Eigen::MatrixXd lower_;
  double log_det_ = 0.0;
  double jitter_ = 0.0;
};

/// log N(residual | 0, cov) using a precomputed factor.
double gaussian_log_density(const Eigen::VectorXd& residual, const SpdFactor& cov);

bool all_finite(const Eigen::Ref<const Eigen::MatrixXd>& m);

}  // namespace sebn
