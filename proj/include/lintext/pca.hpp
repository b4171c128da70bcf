#pragma once

#include "lintext/matrix.hpp"

namespace lintext {

struct PcaModel {
  Vector mean;                 // length K
  DenseMatrix components;      // K x k, orthonormal columns
  Vector explained_variance;   // length k, nonincreasing

  Eigen::Index input_dim() const { return components.rows(); }
  Eigen::Index k() const { return components.cols(); }
};

enum class PcaSolver {
  Auto,   // SVD for small inputs, otherwise the smaller of Gram/covariance
  Svd,    // thin SVD of the centered dense matrix
  Gram,   // eigendecomposition of the N x N centered Gram matrix
  Covariance,  // eigendecomposition of the K x K covariance matrix
};

/// Fits k mean-centered principal components, ordered by explained variance.
/// Each component's largest-magnitude loading is made positive. Requires
/// 1 <= k <= min(N - 1, K). Directions beyond the data's rank are completed
/// to an orthonormal set deterministically and carry zero variance.
PcaModel pca_fit(const Matrix& m, Eigen::Index k, PcaSolver solver = PcaSolver::Auto);

/// (row - mean) * components for every row; dense N x k.
DenseMatrix pca_project(const PcaModel& model, const Matrix& m);

}  // namespace lintext
