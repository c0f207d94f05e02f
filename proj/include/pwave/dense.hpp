#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pwave {

// Row-major dense matrix of doubles.  Deliberately minimal: it carries the
// level predictor/update/transform blocks and the structured concatenation
// operators below, and is only ever used at sizes where dense storage is
// appropriate (element blocks, per-level matrices, test oracles).
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> values() const { return data_; }

  DenseMatrix transposed() const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;
  DenseMatrix operator+(const DenseMatrix& rhs) const;
  DenseMatrix operator-(const DenseMatrix& rhs) const;
  DenseMatrix scaled(double factor) const;
  std::vector<double> apply(std::span<const double> v) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Largest entrywise deviation between two matrices of equal shape.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// Positions of the coarse (delta) and surplus (nabla) nodes inside the next
// finer grid.  Together the two sets partition 0 .. delta.size()+nabla.size()-1.
struct IndexSets {
  std::vector<std::size_t> delta;
  std::vector<std::size_t> nabla;

  std::size_t total() const { return delta.size() + nabla.size(); }
};

// Column merge: output column idx.delta[c] is column c of `a`, column
// idx.nabla[c] is column c of `b`.  Row counts must agree.
DenseMatrix merge_cols(const DenseMatrix& a, const DenseMatrix& b, const IndexSets& idx);

// Row merge, the transpose analogue of merge_cols.
DenseMatrix merge_rows(const DenseMatrix& a, const DenseMatrix& b, const IndexSets& idx);

// Stack b below a with the first column of b aligned under the last column
// of a; shape (m+p) x (n+q-1).  Untouched entries are zero.
DenseMatrix stack_col_overlap(const DenseMatrix& a, const DenseMatrix& b);

// Place b to the right of a with the first row of b sharing the last row of
// a; shape (m+p-1) x (n+q).
DenseMatrix stack_row_overlap(const DenseMatrix& a, const DenseMatrix& b);

// Diagonal concatenation overlapping in the single corner entry, which
// accumulates a(m-1,n-1) + b(0,0); shape (m+p-1) x (n+q-1).
DenseMatrix stack_overlap_sum(const DenseMatrix& a, const DenseMatrix& b);

// Ordinary block-diagonal concatenation; shape (m+p) x (n+q).
DenseMatrix block_diag(const DenseMatrix& a, const DenseMatrix& b);

// Gaussian elimination with partial pivoting.  Small systems and test
// oracles only; the production solver for Gram systems is the banded
// Cholesky in banded.hpp.
std::vector<double> dense_solve(DenseMatrix a, std::vector<double> rhs);
DenseMatrix dense_solve(DenseMatrix a, DenseMatrix rhs);
DenseMatrix dense_inverse(const DenseMatrix& a);

}  // namespace pwave
