#include "pwave/banded.hpp"

#include <cmath>

namespace pwave {

BandedSPDMatrix::BandedSPDMatrix(std::size_t dim, std::size_t bandwidth)
    : dim_(dim), bw_(bandwidth), band_(dim * (bandwidth + 1), 0.0) {
  if (dim == 0) throw std::invalid_argument("banded matrix: zero dimension");
}

double& BandedSPDMatrix::at(std::size_t i, std::size_t j) {
  if (i >= dim_ || j > i || i - j > bw_)
    throw std::invalid_argument("banded matrix: entry outside the stored lower band");
  return band_[i * (bw_ + 1) + (j + bw_ - i)];
}

double BandedSPDMatrix::get(std::size_t i, std::size_t j) const {
  if (j > i) std::swap(i, j);
  if (i >= dim_ || i - j > bw_) return 0.0;
  return band_[i * (bw_ + 1) + (j + bw_ - i)];
}

DenseMatrix BandedSPDMatrix::to_dense() const {
  DenseMatrix out(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = get(i, j);
  return out;
}

BandedCholesky::BandedCholesky(const BandedSPDMatrix& a)
    : dim_(a.dim_), bw_(a.bw_), band_(a.band_), inv_diag_(a.dim_) {
  const std::size_t w = bw_ + 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::size_t jmin = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = jmin; j <= i; ++j) {
      double sum = band_[i * w + (j + bw_ - i)];
      const std::size_t kmin = std::max(jmin, j > bw_ ? j - bw_ : 0);
      for (std::size_t k = kmin; k < j; ++k)
        sum -= band_[i * w + (k + bw_ - i)] * band_[j * w + (k + bw_ - j)];
      if (j == i) {
        if (!(sum > 0.0)) throw NotSPD("banded Cholesky: non-positive pivot");
        band_[i * w + bw_] = std::sqrt(sum);
      } else {
        band_[i * w + (j + bw_ - i)] = sum * inv_diag_[j];
      }
    }
    inv_diag_[i] = 1.0 / band_[i * w + bw_];
  }
}

void BandedCholesky::solve_in_place(std::span<double> x) const {
  if (x.size() != dim_) throw std::invalid_argument("banded solve: length mismatch");
  const std::size_t w = bw_ + 1;
  // forward substitution L y = b
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = x[i];
    const std::size_t jmin = i > bw_ ? i - bw_ : 0;
    for (std::size_t j = jmin; j < i; ++j) acc -= band_[i * w + (j + bw_ - i)] * x[j];
    x[i] = acc * inv_diag_[i];
  }
  // back substitution L^T x = y
  for (std::size_t i = dim_; i-- > 0;) {
    double acc = x[i];
    const std::size_t jmax = std::min(dim_ - 1, i + bw_);
    for (std::size_t j = i + 1; j <= jmax; ++j) acc -= band_[j * w + (i + bw_ - j)] * x[j];
    x[i] = acc * inv_diag_[i];
  }
}

std::vector<double> BandedCholesky::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

DenseMatrix BandedCholesky::solve(const DenseMatrix& rhs) const {
  if (rhs.rows() != dim_) throw std::invalid_argument("banded solve: row count mismatch");
  DenseMatrix out(rhs.rows(), rhs.cols());
  std::vector<double> col(dim_);
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    for (std::size_t i = 0; i < dim_; ++i) col[i] = rhs(i, j);
    solve_in_place(col);
    for (std::size_t i = 0; i < dim_; ++i) out(i, j) = col[i];
  }
  return out;
}

DenseMatrix banded_cholesky_solve(const BandedSPDMatrix& g, const DenseMatrix& rhs) {
  return BandedCholesky(g).solve(rhs);
}

}  // namespace pwave
