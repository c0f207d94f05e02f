#pragma once

#include <span>
#include <vector>

#include "pwave/lifting.hpp"

namespace pwave {

// Nodal samples of a family of basis functions at the deepest grid of a
// plan; column k holds one function sampled at every node.
struct BasisPair {
  DenseMatrix phi;
  DenseMatrix psi;
};

// Scaling and wavelet functions of one level, generated by running the
// inverse transform on unit coefficient pyramids down to the plan depth.
BasisPair cascade_primal(const TransformPlan& plan, int level);

// Dual (analysis) functions of one level, generated by forward-transforming
// scaled unit vectors.  The scaling keeps each approximate delta at unit
// integral, so the samples converge weakly to the true duals as the depth
// grows.  For the interpolation family the duals are point measures and the
// samples are spikes of size 1/epsilon; they have no pointwise limit.
BasisPair cascade_dual(const TransformPlan& plan, int level);

// Integrals of the depth-level nodal basis functions, used to normalize the
// approximate deltas.
std::vector<double> scaling_epsilon(int order, int depth);

// Exact L2 norms of the level's scaling and wavelet functions.
struct LevelNorms {
  std::vector<double> phi;
  std::vector<double> psi;
};
LevelNorms basis_norms(const TransformPlan& plan, int level);

// Nodal interpolation refinement of a piecewise polynomial from one level's
// nodes to a deeper level's nodes (exact for members of the coarse space).
std::vector<double> refine_nodal(int order, int from_level, int to_level,
                                 std::span<const double> values);

// Exact L2 inner product over [0,1] of two functions given by their nodal
// values at one level (piecewise degree-q polynomials, or piecewise
// constants for order 0).
double l2_inner_product(int order, int level, std::span<const double> f,
                        std::span<const double> g);
double l2_norm(int order, int level, std::span<const double> f);

}  // namespace pwave
