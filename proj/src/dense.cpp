#include "pwave/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace pwave {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  DenseMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
  DenseMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix sum: shapes differ");
  DenseMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix difference: shapes differ");
  DenseMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

DenseMatrix DenseMatrix::scaled(double factor) const {
  DenseMatrix out = *this;
  for (double& v : out.data_) v *= factor;
  return out;
}

std::vector<double> DenseMatrix::apply(std::span<const double> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix apply: length mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

namespace {

void check_partition(const IndexSets& idx) {
  const std::size_t n = idx.total();
  std::vector<char> seen(n, 0);
  auto mark = [&](std::size_t k) {
    if (k >= n || seen[k]) throw std::invalid_argument("index sets do not partition the range");
    seen[k] = 1;
  };
  for (std::size_t k : idx.delta) mark(k);
  for (std::size_t k : idx.nabla) mark(k);
}

}  // namespace

DenseMatrix merge_cols(const DenseMatrix& a, const DenseMatrix& b, const IndexSets& idx) {
  if (a.rows() != b.rows()) throw std::invalid_argument("merge_cols: row counts differ");
  if (a.cols() != idx.delta.size() || b.cols() != idx.nabla.size())
    throw std::invalid_argument("merge_cols: column counts do not match index sets");
  check_partition(idx);
  DenseMatrix out(a.rows(), idx.total());
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, idx.delta[c]) = a(i, c);
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (std::size_t i = 0; i < b.rows(); ++i) out(i, idx.nabla[c]) = b(i, c);
  return out;
}

DenseMatrix merge_rows(const DenseMatrix& a, const DenseMatrix& b, const IndexSets& idx) {
  if (a.cols() != b.cols()) throw std::invalid_argument("merge_rows: column counts differ");
  if (a.rows() != idx.delta.size() || b.rows() != idx.nabla.size())
    throw std::invalid_argument("merge_rows: row counts do not match index sets");
  check_partition(idx);
  DenseMatrix out(idx.total(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < a.cols(); ++j) out(idx.delta[r], j) = a(r, j);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) out(idx.nabla[r], j) = b(r, j);
  return out;
}

DenseMatrix stack_col_overlap(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() + b.rows(), a.cols() + b.cols() - 1);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  const std::size_t r0 = a.rows(), c0 = a.cols() - 1;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
  return out;
}

DenseMatrix stack_row_overlap(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() + b.rows() - 1, a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  const std::size_t r0 = a.rows() - 1, c0 = a.cols();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
  return out;
}

DenseMatrix stack_overlap_sum(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() + b.rows() - 1, a.cols() + b.cols() - 1);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  const std::size_t r0 = a.rows() - 1, c0 = a.cols() - 1;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) += b(i, j);
  return out;
}

DenseMatrix block_diag(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

DenseMatrix dense_solve(DenseMatrix a, DenseMatrix rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.rows() != n) throw std::invalid_argument("dense_solve: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a(i, col)) > std::abs(a(pivot, col))) pivot = i;
    if (a(pivot, col) == 0.0) throw std::invalid_argument("dense_solve: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      for (std::size_t j = 0; j < rhs.cols(); ++j) std::swap(rhs(col, j), rhs(pivot, j));
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = a(i, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(i, j) -= f * rhs(col, j);
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      double acc = rhs(col, j);
      for (std::size_t k = col + 1; k < n; ++k) acc -= a(col, k) * rhs(k, j);
      rhs(col, j) = acc / a(col, col);
    }
  }
  return rhs;
}

std::vector<double> dense_solve(DenseMatrix a, std::vector<double> rhs) {
  DenseMatrix b(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  DenseMatrix x = dense_solve(std::move(a), std::move(b));
  std::vector<double> out(x.rows());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x(i, 0);
  return out;
}

DenseMatrix dense_inverse(const DenseMatrix& a) {
  return dense_solve(a, DenseMatrix::identity(a.rows()));
}

}  // namespace pwave
