#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sebn {

/// Samples are rows, variables are columns. The three splits share column names.
struct Dataset {
  std::vector<std::string> names;
  Eigen::MatrixXd train;
  Eigen::MatrixXd validation;
  Eigen::MatrixXd test;

  int columns() const { return static_cast<int>(names.size()); }
  /// Throws ContractViolation if the split widths disagree with `names`.
  void validate() const;
};

/// Columns `indices` of `data`, in the given order.
Eigen::MatrixXd select_columns(const Eigen::MatrixXd& data, std::span<const int> indices);

/// Linear mean term: weights follow the node's ordered linear parents.
struct LinearTerm {
  std::vector<double> weights;
  double intercept = 0.0;

  bool operator==(const LinearTerm&) const = default;
};

struct LeastSquaresFit {
  LinearTerm term;
  double residual_variance = 0.0;  ///< Maximum-likelihood (divide by N).
};

/// Ordinary least squares of `child` on `parents` plus an intercept.
LeastSquaresFit least_squares(const Eigen::MatrixXd& data, int child, std::span<const int> parents);

/// y - X w - b for the given rows.
Eigen::VectorXd linear_residual(const Eigen::MatrixXd& data, int child, std::span<const int> parents,
                                const LinearTerm& term);

}  // namespace sebn
