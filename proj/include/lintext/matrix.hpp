#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lintext/common.hpp"

namespace lintext {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, std::int64_t>;
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Documents x features values, stored sparse (occurrence matrices and their
/// transforms) or dense (after PCA projection).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(SparseMatrix m) : data_(std::move(m)) {}
  explicit Matrix(DenseMatrix m) : data_(std::move(m)) {}

  Eigen::Index rows() const;
  Eigen::Index cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(data_); }

  const SparseMatrix& sparse() const { return std::get<SparseMatrix>(data_); }
  const DenseMatrix& dense() const { return std::get<DenseMatrix>(data_); }

  DenseMatrix to_dense() const;
  Matrix select_rows(std::span<const std::size_t> rows) const;

  double row_dot(Eigen::Index r, const Vector& w) const;
  bool is_binary() const;

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), data_);
  }

 private:
  std::variant<SparseMatrix, DenseMatrix> data_;
};

/// Row-aligned feature matrix: row r belongs to ids[r] with labels[r].
struct OccurrenceMatrix {
  Matrix values;
  std::vector<std::string> ids;
  std::vector<Label> labels;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  OccurrenceMatrix select_rows(std::span<const std::size_t> rows) const;
};

SparseMatrix select_sparse_rows(const SparseMatrix& m, std::span<const std::size_t> rows);
SparseMatrix select_sparse_cols(const SparseMatrix& m, Eigen::Index first, Eigen::Index count);

std::size_t count_positive(std::span<const Label> labels);

}  // namespace lintext
