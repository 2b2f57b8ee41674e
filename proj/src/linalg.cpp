#include "sebn/linalg.hpp"

#include <cmath>
#include <numbers>

#include "sebn/errors.hpp"

namespace sebn {

namespace {

constexpr int kJitterRetries = 3;

bool try_cholesky(Eigen::MatrixXd& a) {
  if (a.rows() == 0) return true;
  Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(a);
  return llt.info() == Eigen::Success;
}

}  // namespace

SpdFactor::SpdFactor(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) throw NumericalError("SpdFactor: matrix is not square");
  if (!all_finite(matrix)) throw NumericalError("SpdFactor: matrix has non-finite entries");

  lower_ = matrix;
  bool ok = try_cholesky(lower_);
  if (!ok) {
    const double mean_diag = matrix.rows() > 0 ? matrix.diagonal().mean() : 0.0;
    double jitter = 1e-8 * std::abs(mean_diag);
    for (int attempt = 0; attempt < kJitterRetries && !ok; ++attempt, jitter *= 10.0) {
      lower_ = matrix;
      lower_.diagonal().array() += jitter;
      ok = try_cholesky(lower_);
      if (ok) jitter_ = jitter;
    }
  }
  if (!ok) throw NumericalError("covariance matrix is numerically not positive definite");

  lower_.triangularView<Eigen::StrictlyUpper>().setZero();
  log_det_ = 2.0 * lower_.diagonal().array().log().sum();
}

Eigen::VectorXd SpdFactor::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd x = lower_.triangularView<Eigen::Lower>().solve(rhs);
  lower_.triangularView<Eigen::Lower>().transpose().solveInPlace(x);
  return x;
}

Eigen::MatrixXd SpdFactor::solve_lower(const Eigen::MatrixXd& rhs) const {
  return lower_.triangularView<Eigen::Lower>().solve(rhs);
}

Eigen::MatrixXd SpdFactor::inverse() const {
  Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(lower_.rows(), lower_.cols());
  if (inv.rows() == 0) return inv;
  lower_.triangularView<Eigen::Lower>().solveInPlace(inv);
  lower_.triangularView<Eigen::Lower>().transpose().solveInPlace(inv);
  return inv;
}

double gaussian_log_density(const Eigen::VectorXd& residual, const SpdFactor& cov) {
  if (residual.size() != cov.size()) throw NumericalError("gaussian_log_density: dimension mismatch");
  if (residual.size() == 0) return 0.0;
  const Eigen::VectorXd z = cov.solve_lower(residual);
  const double n = static_cast<double>(residual.size());
  return -0.5 * (z.squaredNorm() + cov.log_det() + n * std::log(2.0 * std::numbers::pi));
}

bool all_finite(const Eigen::Ref<const Eigen::MatrixXd>& m) { return m.allFinite(); }

}  // namespace sebn
