#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "pwave/dense.hpp"

namespace pwave {

// Thrown when a Cholesky pivot is not strictly positive.
class NotSPD : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Symmetric positive-definite matrix in lower-triangular band storage:
// row i keeps A(i, i-bw) .. A(i, i) packed contiguously.  Only the lower
// band is stored, so the matrix is symmetric by construction.
class BandedSPDMatrix {
public:
  BandedSPDMatrix(std::size_t dim, std::size_t bandwidth);

  std::size_t dim() const { return dim_; }
  std::size_t bandwidth() const { return bw_; }

  // Lower-triangle write access; requires i >= j and i - j <= bandwidth.
  double& at(std::size_t i, std::size_t j);
  void add(std::size_t i, std::size_t j, double v) { at(i, j) += v; }

  // Symmetric read; zero outside the band.
  double get(std::size_t i, std::size_t j) const;

  DenseMatrix to_dense() const;

private:
  friend class BandedCholesky;
  std::size_t dim_ = 0;
  std::size_t bw_ = 0;
  std::vector<double> band_;  // dim * (bw + 1), row-packed
};

// Cholesky factorization A = L L^T kept in band storage.  Factoring costs
// O(dim * bandwidth^2); each solve costs O(dim * bandwidth).  The factor is
// immutable after construction and safe to share across threads.
class BandedCholesky {
public:
  explicit BandedCholesky(const BandedSPDMatrix& a);  // throws NotSPD

  std::size_t dim() const { return dim_; }

  void solve_in_place(std::span<double> x) const;
  std::vector<double> solve(std::span<const double> rhs) const;
  DenseMatrix solve(const DenseMatrix& rhs) const;

private:
  std::size_t dim_ = 0;
  std::size_t bw_ = 0;
  std::vector<double> band_;
  std::vector<double> inv_diag_;
};

// One-shot convenience: factor g and solve g X = rhs.
DenseMatrix banded_cholesky_solve(const BandedSPDMatrix& g, const DenseMatrix& rhs);

}  // namespace pwave
