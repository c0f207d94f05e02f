#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "pwave/dense.hpp"

namespace pwave {

// Thrown when the requested polynomial order would overflow the factorial
// products evaluated in double precision.
class OrderTooLarge : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline constexpr int kMaxOrder = 12;

// Interpolation weights for one element: row m predicts the value at the
// m-th surplus (odd) node of the refined element from the q+1 element nodes.
// Shape q x (q+1) for q >= 1; the order-0 stencil is the 1x1 identity (a
// surplus cell copies the value of its parent cell).
struct Stencil {
  int order = 0;
  DenseMatrix weights;
};

// Closed form for the degree-q Lagrange interpolant on equispaced nodes
// evaluated at the midpoints: entry (m, n) is
//   (-1)^(m+n) / (2^q (1+2m-2n)) * (2m+1)!! (2q-2m-1)!! / (n! (q-n)!).
Stencil stencil_closed_form(int order);

// Independent route to the same weights: evaluate each Lagrange basis
// polynomial at the surplus nodes through the defining product formula.
Stencil stencil_oracle(int order);

// Per-level predictor matrix: the element stencils stacked with one shared
// column at each interior element boundary, shape (q 2^j) x (q 2^j + 1).
// Requires q >= 1; the order-0 predictor is the identity.
DenseMatrix assemble_predictor(int order, int level);

// Element-blockwise prediction of all surplus values from the coarse nodal
// values; O(q^2) per element.
void apply_predict(const Stencil& stencil, std::span<const double> coarse,
                   std::span<double> out);
std::vector<double> apply_predict(const Stencil& stencil, std::span<const double> coarse);

}  // namespace pwave
