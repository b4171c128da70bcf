#include "lintext/matrix.hpp"

#include <algorithm>

namespace lintext {

Eigen::Index Matrix::rows() const {
  return visit([](const auto& m) { return static_cast<Eigen::Index>(m.rows()); });
}

Eigen::Index Matrix::cols() const {
  return visit([](const auto& m) { return static_cast<Eigen::Index>(m.cols()); });
}

DenseMatrix Matrix::to_dense() const {
  if (is_sparse()) return DenseMatrix(sparse());
  return dense();
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  if (is_sparse()) return Matrix(select_sparse_rows(sparse(), rows));
  const DenseMatrix& d = dense();
  DenseMatrix out(static_cast<Eigen::Index>(rows.size()), d.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = d.row(static_cast<Eigen::Index>(rows[i]));
  return Matrix(std::move(out));
}

double Matrix::row_dot(Eigen::Index r, const Vector& w) const {
  if (is_sparse()) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(sparse(), r); it; ++it) s += it.value() * w[it.col()];
    return s;
  }
  return dense().row(r).dot(w);
}

bool Matrix::is_binary() const {
  if (is_sparse()) {
    const SparseMatrix& m = sparse();
    const double* v = m.valuePtr();
    return std::all_of(v, v + m.nonZeros(), [](double x) { return x == 0.0 || x == 1.0; });
  }
  return (dense().array() == 0.0 || dense().array() == 1.0).all();
}

OccurrenceMatrix OccurrenceMatrix::select_rows(std::span<const std::size_t> rows) const {
  OccurrenceMatrix out;
  out.values = values.select_rows(rows);
  out.ids.reserve(rows.size());
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) {
    out.ids.push_back(ids[r]);
    out.labels.push_back(labels[r]);
  }
  return out;
}

SparseMatrix select_sparse_rows(const SparseMatrix& m, std::span<const std::size_t> rows) {
  SparseMatrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  std::int64_t nnz = 0;
  for (std::size_t r : rows) {
    const auto rr = static_cast<Eigen::Index>(r);
    nnz += m.outerIndexPtr()[rr + 1] - m.outerIndexPtr()[rr];
  }
  out.reserve(nnz);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out.startVec(row);
    for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(rows[i])); it; ++it)
      out.insertBack(row, it.col()) = it.value();
  }
  out.finalize();
  return out;
}

SparseMatrix select_sparse_cols(const SparseMatrix& m, Eigen::Index first, Eigen::Index count) {
  SparseMatrix out(m.rows(), count);
  out.reserve(m.nonZeros());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.startVec(r);
    for (SparseMatrix::InnerIterator it(m, r); it; ++it)
      if (it.col() >= first && it.col() < first + count) out.insertBack(r, it.col() - first) = it.value();
  }
  out.finalize();
  return out;
}

std::size_t count_positive(std::span<const Label> labels) {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::Relevant));
}

}  // namespace lintext
