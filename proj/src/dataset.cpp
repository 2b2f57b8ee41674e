#include "sebn/dataset.hpp"

#include "sebn/errors.hpp"

namespace sebn {

void Dataset::validate() const {
  const auto n = static_cast<Eigen::Index>(names.size());
  if (n == 0) throw ContractViolation("Dataset: no columns");
  for (const auto* split : {&train, &validation, &test})
    if (split->size() > 0 && split->cols() != n) throw ContractViolation("Dataset: split width does not match names");
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& data, std::span<const int> indices) {
  Eigen::MatrixXd out(data.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const int c = indices[k];
    if (c < 0 || c >= data.cols()) throw ContractViolation("select_columns: column index out of range");
    out.col(static_cast<Eigen::Index>(k)) = data.col(c);
  }
  return out;
}

LeastSquaresFit least_squares(const Eigen::MatrixXd& data, int child, std::span<const int> parents) {
  if (data.rows() == 0) throw ContractViolation("least_squares: no rows");
  if (child < 0 || child >= data.cols()) throw ContractViolation("least_squares: child index out of range");
  const Eigen::Index k = static_cast<Eigen::Index>(parents.size());
  Eigen::MatrixXd design(data.rows(), k + 1);
  design.leftCols(k) = select_columns(data, parents);
  design.col(k).setOnes();
  const Eigen::VectorXd y = data.col(child);
  const Eigen::VectorXd beta = design.colPivHouseholderQr().solve(y);

  LeastSquaresFit fit;
  fit.term.weights.assign(beta.data(), beta.data() + k);
  fit.term.intercept = beta(k);
  fit.residual_variance = (y - design * beta).squaredNorm() / static_cast<double>(data.rows());
  return fit;
}

Eigen::VectorXd linear_residual(const Eigen::MatrixXd& data, int child, std::span<const int> parents,
                                const LinearTerm& term) {
  if (term.weights.size() != parents.size()) throw ContractViolation("linear_residual: weight count mismatch");
  Eigen::VectorXd r = data.col(child).array() - term.intercept;
  for (std::size_t k = 0; k < parents.size(); ++k) r -= term.weights[k] * data.col(parents[k]);
  return r;
}

}  // namespace sebn
