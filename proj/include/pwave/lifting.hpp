#pragma once

#include <span>
#include <vector>

#include "pwave/grid.hpp"
#include "pwave/predictor.hpp"
#include "pwave/update.hpp"

namespace pwave {

// Predictor and update operators of one refinement level.
struct LevelOperators {
  int level = 0;
  UpdateOp update;
};

// Precomputed operators for the full multilevel transform of one grid shape.
// Building the plan performs all Gram factorizations; the transform itself is
// matrix-free and costs O(q^2) per node per level.  A plan is immutable after
// construction, and concurrent transforms of different arrays through one
// plan are safe.
class TransformPlan {
public:
  TransformPlan(ProjectorKind kind, int order, int levels);

  ProjectorKind kind() const { return kind_; }
  int order() const { return grid_.order(); }
  int levels() const { return grid_.levels(); }
  const GridHierarchy& grid() const { return grid_; }
  const Stencil& stencil() const { return stencil_; }
  const UpdateOp& update(int level) const { return ops_.at(level).update; }

  // One forward lifting step applied to the leading n_(j+1) entries of buf,
  // which are replaced by the coarse values followed by the detail values.
  // scratch must provide at least n_(j+1) entries.
  void forward_level_in_prefix(int level, std::span<double> buf, std::span<double> scratch) const;
  void inverse_level_in_prefix(int level, std::span<double> buf, std::span<double> scratch) const;

  // Allocating one-level wrappers.
  std::pair<std::vector<double>, std::vector<double>> forward_level(
      int level, std::span<const double> fine) const;
  std::vector<double> inverse_level(int level, std::span<const double> alpha,
                                    std::span<const double> beta) const;

  CoefficientPyramid forward(std::span<const double> data) const;
  std::vector<double> inverse(const CoefficientPyramid& pyramid) const;

  // Coarse nodal approximation after lifting down to the given level.
  std::vector<double> coarse_approximation(std::span<const double> data, int level) const;

  // Reconstruction starting from level `level`: alpha are the nodal values
  // there and betas[i] the details of level level+i (missing or short lists
  // are treated as zero details).
  std::vector<double> inverse_from_level(int level, std::span<const double> alpha,
                                         std::span<const std::vector<double>> betas) const;

private:
  ProjectorKind kind_;
  GridHierarchy grid_;
  Stencil stencil_;
  std::vector<LevelOperators> ops_;
};

// Dense per-level transform blocks: M_j = [a; b] maps fine values to
// (coarse, detail); its inverse is [c, d].
struct LevelMatrices {
  DenseMatrix a, b, c, d;
};
LevelMatrices level_matrices(const TransformPlan& plan, int level);

// Dense predictor of one level (identity for order 0); test carrier.
DenseMatrix predictor_dense(const TransformPlan& plan, int level);

// Dense composite transform matrix and its inverse, built as products of
// identity-padded level matrices.  Verification only; O(N^2) storage.
DenseMatrix composite_matrix(const TransformPlan& plan);
DenseMatrix composite_matrix_inverse(const TransformPlan& plan);

}  // namespace pwave
