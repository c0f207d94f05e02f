#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pwave/banded.hpp"
#include "pwave/dense.hpp"

namespace pwave {

// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
// 2*points - 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(std::size_t points);

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    std::size_t points);

// Value at x of the Lagrange basis polynomial that is 1 at nodes[i] and 0 at
// the remaining nodes.
double lagrange_value(std::span<const double> nodes, std::size_t i, double x);

// Closed Newton-Cotes weights on n+1 equispaced nodes, normalized so the
// weights sum to n (unit node spacing).  Supported for 1 <= n <= 8; beyond
// that the closed rules turn unstable and are not needed here.
std::vector<double> newton_cotes_weights(int subintervals);

// Inner products of the nodal basis over a single element of the two-level
// pair with fine spacing h.  gdd pairs the q+1 coarse basis functions with
// each other; gdn pairs them with the q fine basis functions at the surplus
// nodes.  Both scale linearly in h.
struct ElementGram {
  int order = 0;
  double spacing = 1.0;
  DenseMatrix gdd;  // (q+1) x (q+1), symmetric positive definite
  DenseMatrix gdn;  // (q+1) x q
};
ElementGram element_gram(int order, double spacing);

// Global Gram matrix of the level-j nodal basis against itself, assembled
// element by element; bandwidth q, dimension q*2^j + 1.  `spacing` is the
// fine-grid spacing of the refined level (defaults to the physical spacing
// on [0,1]).  For q = 0 neighboring elements share no nodes and the matrix
// is diagonal.
BandedSPDMatrix assemble_global_gram_dd(int order, int level, double spacing = -1.0);

// Global coarse-against-surplus Gram matrix, shape (q*2^j + 1) x (q*2^j)
// for q >= 1 and diagonal 2^j x 2^j for q = 0.  Dense carrier for tests and
// small builds; the transform applies the element blocks directly.
DenseMatrix assemble_global_gram_dn(int order, int level, double spacing = -1.0);

// Physical fine-grid spacing of the level-(j+1) grid on [0,1].
double fine_spacing(int order, int level);

// Mass matrix of one element with unit node spacing: entry (a, b) is the
// integral of L_a L_b over [0, q] for the Lagrange basis on nodes 0..q.
DenseMatrix element_mass_unit(int order);

}  // namespace pwave
