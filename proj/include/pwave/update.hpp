#pragma once

#include <memory>
#include <span>
#include <string>

#include "pwave/banded.hpp"
#include "pwave/dense.hpp"
#include "pwave/gram.hpp"

namespace pwave {

// Family of projectors driving the update step.  Interpolation skips the
// update entirely; CG realizes the global L2 projection onto the coarse
// space; DG projects element by element and averages the shared nodal
// values.  At order 0 both CG and DG reduce to the Haar update.
enum class ProjectorKind { Interpolation = 0, CG = 1, DG = 2 };

const char* to_string(ProjectorKind kind);
ProjectorKind projector_kind_from_string(const std::string& name);

// Update operator U of one level: alpha += sign * U * beta, with
// |delta_j| rows and |nabla_j| columns.  Construction may factor the global
// Gram matrix once; application is matrix-free afterwards.  Immutable and
// shareable after construction.
class UpdateOp {
public:
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void apply(std::span<const double> beta, std::span<double> alpha, double sign = 1.0) const;

  // Materialized matrix; intended for tests, level matrices, and cascades.
  DenseMatrix dense() const;

private:
  friend UpdateOp build_update(ProjectorKind kind, int order, int level);
  enum class Impl { Zero, HalfIdentity, ElementBlocks, GlobalGram };

  Impl impl_ = Impl::Zero;
  int order_ = 0;
  std::size_t elements_ = 1;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  DenseMatrix local_;  // DG: single-element update block (q+1) x q
  DenseMatrix gdn_;    // CG: element Gram block pairing coarse and surplus basis
  std::shared_ptr<const BandedCholesky> factor_;  // CG: factored global Gram
};

UpdateOp build_update(ProjectorKind kind, int order, int level);

// Same CG system solved densely with a general solver; validation oracle for
// the banded path.
DenseMatrix cg_update_dense_oracle(int order, int level);

}  // namespace pwave
