#include "lintext/pca.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace lintext {
namespace {

constexpr double kRankTolerance = 1e-10;

Vector column_mean(const Matrix& m) {
  Vector mean = Vector::Zero(m.cols());
  if (m.is_sparse()) {
    const SparseMatrix& s = m.sparse();
    for (Eigen::Index r = 0; r < s.rows(); ++r)
      for (SparseMatrix::InnerIterator it(s, r); it; ++it) mean[it.col()] += it.value();
  } else {
    mean = m.dense().colwise().sum().transpose();
  }
  return mean / static_cast<double>(m.rows());
}

// Modified Gram-Schmidt over the first `valid` columns, then completes the
// remaining columns with standard basis vectors in index order.
void orthonormalize(DenseMatrix& v, Eigen::Index valid) {
  const Eigen::Index dim = v.rows();
  for (Eigen::Index j = 0; j < valid; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) v.col(j) -= v.col(i).dot(v.col(j)) * v.col(i);
    v.col(j).normalize();
  }
  Eigen::Index next_basis = 0;
  for (Eigen::Index j = valid; j < v.cols(); ++j) {
    while (true) {
      if (next_basis >= dim) throw DataError("pca: cannot complete orthonormal basis");
      Vector cand = Vector::Unit(dim, next_basis++);
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index i = 0; i < j; ++i) cand -= v.col(i).dot(cand) * v.col(i);
      const double n = cand.norm();
      if (n > 1e-6) {
        v.col(j) = cand / n;
        break;
      }
    }
  }
}

void fix_signs(DenseMatrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const double max_abs = v.col(j).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) >= max_abs * (1.0 - 1e-9)) {
        if (v(i, j) < 0) v.col(j) = -v.col(j);
        break;
      }
    }
  }
}

// Count of eigenvalues (descending) that are meaningfully nonzero.
Eigen::Index effective_rank(const Vector& sq_sigma, Eigen::Index k) {
  const double top = sq_sigma.size() > 0 ? sq_sigma[0] : 0.0;
  Eigen::Index r = 0;
  while (r < k && top > 0.0 && sq_sigma[r] > kRankTolerance * top) ++r;
  return r;
}

}  // namespace

PcaModel pca_fit(const Matrix& m, Eigen::Index k, PcaSolver solver) {
  const Eigen::Index n = m.rows();
  const Eigen::Index dim = m.cols();
  if (k < 1 || k > std::min(n - 1, dim))
    throw DataError("pca_fit: k=" + std::to_string(k) + " outside [1, min(N-1, K)] = [1, " +
                    std::to_string(std::min(n - 1, dim)) + "]");

  if (solver == PcaSolver::Auto) {
    if (static_cast<double>(n) * static_cast<double>(dim) <= 2.0e6)
      solver = PcaSolver::Svd;
    else
      solver = n <= dim ? PcaSolver::Gram : PcaSolver::Covariance;
  }

  PcaModel model;
  model.mean = column_mean(m);
  Vector sq_sigma(k);  // squared singular values of the centered data
  DenseMatrix v(dim, k);
  Eigen::Index rank = 0;

  if (solver == PcaSolver::Svd) {
    DenseMatrix centered = m.to_dense();
    centered.rowwise() -= model.mean.transpose();
    Eigen::BDCSVD<DenseMatrix> svd(centered, Eigen::ComputeThinV);
    const Vector s = svd.singularValues();
    for (Eigen::Index j = 0; j < k; ++j) sq_sigma[j] = s[j] * s[j];
    v = svd.matrixV().leftCols(k);
    rank = effective_rank(sq_sigma, k);
  } else if (solver == PcaSolver::Gram) {
    DenseMatrix gram;
    if (m.is_sparse()) {
      const SparseMatrix& s = m.sparse();
      gram = DenseMatrix(s * s.transpose());
    } else {
      gram = m.dense() * m.dense().transpose();
    }
    const Vector row_mean = gram.rowwise().mean();
    const double all_mean = row_mean.mean();
    gram.colwise() -= row_mean;
    gram.rowwise() -= row_mean.transpose();
    gram.array() += all_mean;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(gram);
    if (eig.info() != Eigen::Success) throw DataError("pca_fit: Gram eigendecomposition failed");
    // Eigen returns ascending eigenvalues.
    for (Eigen::Index j = 0; j < k; ++j) sq_sigma[j] = std::max(0.0, eig.eigenvalues()[n - 1 - j]);
    rank = effective_rank(sq_sigma, k);
    DenseMatrix u(n, rank);
    for (Eigen::Index j = 0; j < rank; ++j) u.col(j) = eig.eigenvectors().col(n - 1 - j);
    // Centered-U has zero column sums, so X_c^T U = X^T U.
    DenseMatrix xtu = m.is_sparse() ? DenseMatrix(m.sparse().transpose() * u)
                                    : DenseMatrix(m.dense().transpose() * u);
    for (Eigen::Index j = 0; j < rank; ++j) {
      xtu.col(j) -= model.mean * u.col(j).sum();
      v.col(j) = xtu.col(j) / std::sqrt(sq_sigma[j]);
    }
  } else {
    DenseMatrix centered = m.to_dense();
    centered.rowwise() -= model.mean.transpose();
    DenseMatrix cov = DenseMatrix::Zero(dim, dim);
    cov.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
    cov = cov.selfadjointView<Eigen::Lower>();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(cov);
    if (eig.info() != Eigen::Success) throw DataError("pca_fit: covariance eigendecomposition failed");
    for (Eigen::Index j = 0; j < k; ++j) {
      sq_sigma[j] = std::max(0.0, eig.eigenvalues()[dim - 1 - j]);
      v.col(j) = eig.eigenvectors().col(dim - 1 - j);
    }
    rank = effective_rank(sq_sigma, k);
  }

  for (Eigen::Index j = rank; j < k; ++j) sq_sigma[j] = 0.0;
  orthonormalize(v, rank);
  fix_signs(v);
  model.components = std::move(v);
  model.explained_variance = sq_sigma / static_cast<double>(n - 1);
  return model;
}

DenseMatrix pca_project(const PcaModel& model, const Matrix& m) {
  if (m.cols() != model.input_dim())
    throw DataError("pca_project: matrix has " + std::to_string(m.cols()) +
                    " columns, model expects " + std::to_string(model.input_dim()));
  DenseMatrix out = m.is_sparse() ? DenseMatrix(m.sparse() * model.components)
                                  : DenseMatrix(m.dense() * model.components);
  const Vector shift = model.components.transpose() * model.mean;
  out.rowwise() -= shift.transpose();
  return out;
}

}  // namespace lintext
