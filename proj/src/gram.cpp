#include "pwave/gram.hpp"

#include <cmath>
#include <stdexcept>

namespace pwave {

QuadratureRule gauss_legendre(std::size_t points) {
  if (points == 0 || points > 64) throw std::invalid_argument("gauss_legendre: 1..64 points");
  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const std::size_t n = points;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on the Legendre polynomial from the Chebyshev guess.
    double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    std::size_t points) {
  const QuadratureRule rule = gauss_legendre(points);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

double lagrange_value(std::span<const double> nodes, std::size_t i, double x) {
  double prod = 1.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k == i) continue;
    prod *= (x - nodes[k]) / (nodes[i] - nodes[k]);
  }
  return prod;
}

std::vector<double> newton_cotes_weights(int subintervals) {
  switch (subintervals) {
    case 1:
      return {1.0 / 2, 1.0 / 2};
    case 2:
      return {1.0 / 3, 4.0 / 3, 1.0 / 3};
    case 3:
      return {3.0 / 8, 9.0 / 8, 9.0 / 8, 3.0 / 8};
    case 4:
      return {14.0 / 45, 64.0 / 45, 24.0 / 45, 64.0 / 45, 14.0 / 45};
    case 5:
      return {95.0 / 288, 375.0 / 288, 250.0 / 288, 250.0 / 288, 375.0 / 288, 95.0 / 288};
    case 6:
      return {41.0 / 140, 216.0 / 140, 27.0 / 140, 272.0 / 140,
              27.0 / 140, 216.0 / 140, 41.0 / 140};
    case 7:
      return {5257.0 / 17280, 25039.0 / 17280, 9261.0 / 17280, 20923.0 / 17280,
              20923.0 / 17280, 9261.0 / 17280, 25039.0 / 17280, 5257.0 / 17280};
    case 8:
      return {3956.0 / 14175,  23552.0 / 14175, -3712.0 / 14175,
              41984.0 / 14175, -18160.0 / 14175, 41984.0 / 14175,
              -3712.0 / 14175, 23552.0 / 14175, 3956.0 / 14175};
    default:
      throw std::invalid_argument("newton_cotes_weights: 1..8 subintervals");
  }
}

namespace {

// Value at x of the fine nodal basis function at surplus node 2m+1 of one
// element of the two-level pair with unit fine spacing.  The refined element
// splits into the two fine elements [0,q] and [q,2q]; a surplus node interior
// to one of them carries that element's Lagrange basis, while for odd q the
// middle node 2m+1 = q carries the glued basis spanning both halves.
double fine_basis_value(int q, int m, double x) {
  const int node = 2 * m + 1;
  std::vector<double> nodes(q + 1);
  double value = 0.0;
  if (node <= q && x <= double(q)) {
    for (int k = 0; k <= q; ++k) nodes[k] = double(k);
    value = lagrange_value(nodes, std::size_t(node), x);
  } else if (node >= q && x >= double(q)) {
    for (int k = 0; k <= q; ++k) nodes[k] = double(q + k);
    value = lagrange_value(nodes, std::size_t(node - q), x);
  }
  return value;
}

}  // namespace

ElementGram element_gram(int order, double spacing) {
  if (order < 0) throw std::invalid_argument("element_gram: order must be non-negative");
  if (!(spacing > 0.0)) throw std::invalid_argument("element_gram: spacing must be positive");
  ElementGram g;
  g.order = order;
  g.spacing = spacing;
  if (order == 0) {
    g.gdd = DenseMatrix(1, 1);
    g.gdd(0, 0) = 2.0 * spacing;
    g.gdn = DenseMatrix(1, 1);
    g.gdn(0, 0) = spacing;
    return g;
  }
  const int q = order;
  // Work with unit fine spacing on [0, 2q]; every entry scales linearly.
  std::vector<double> coarse_nodes(q + 1);
  for (int n = 0; n <= q; ++n) coarse_nodes[n] = double(2 * n);

  const std::size_t pts = std::size_t(q) + 1;  // exact for degree 2q+1 integrands
  g.gdd = DenseMatrix(q + 1, q + 1);
  for (int n = 0; n <= q; ++n)
    for (int m = n; m <= q; ++m) {
      const double v = spacing * integrate_gl(
                                     [&](double x) {
                                       return lagrange_value(coarse_nodes, n, x) *
                                              lagrange_value(coarse_nodes, m, x);
                                     },
                                     0.0, 2.0 * q, pts);
      g.gdd(n, m) = v;
      g.gdd(m, n) = v;
    }

  // The fine basis is only piecewise polynomial over the element, so the two
  // halves are integrated separately.
  g.gdn = DenseMatrix(q + 1, q);
  for (int n = 0; n <= q; ++n)
    for (int m = 0; m < q; ++m) {
      double v = 0.0;
      if (2 * m + 1 <= q)
        v += integrate_gl(
            [&](double x) {
              return lagrange_value(coarse_nodes, n, x) * fine_basis_value(q, m, x);
            },
            0.0, double(q), pts);
      if (2 * m + 1 >= q)
        v += integrate_gl(
            [&](double x) {
              return lagrange_value(coarse_nodes, n, x) * fine_basis_value(q, m, x);
            },
            double(q), 2.0 * q, pts);
      g.gdn(n, m) = spacing * v;
    }
  return g;
}

double fine_spacing(int order, int level) {
  const double cells = double(std::size_t{1} << (level + 1));
  return order == 0 ? 1.0 / cells : 1.0 / (order * cells);
}

DenseMatrix element_mass_unit(int order) {
  if (order == 0) {
    DenseMatrix m(1, 1);
    m(0, 0) = 1.0;
    return m;
  }
  // The element Gram with fine spacing 1/2 has coarse nodes at unit spacing.
  return element_gram(order, 0.5).gdd;
}

BandedSPDMatrix assemble_global_gram_dd(int order, int level, double spacing) {
  const double h = spacing > 0.0 ? spacing : fine_spacing(order, level);
  const std::size_t elements = std::size_t{1} << level;
  const ElementGram g = element_gram(order, h);
  if (order == 0) {
    BandedSPDMatrix out(elements, 0);
    for (std::size_t e = 0; e < elements; ++e) out.at(e, e) = g.gdd(0, 0);
    return out;
  }
  const std::size_t q = order;
  BandedSPDMatrix out(q * elements + 1, q);
  for (std::size_t e = 0; e < elements; ++e)
    for (std::size_t a = 0; a <= q; ++a)
      for (std::size_t b = 0; b <= a; ++b) out.add(e * q + a, e * q + b, g.gdd(a, b));
  return out;
}

DenseMatrix assemble_global_gram_dn(int order, int level, double spacing) {
  const double h = spacing > 0.0 ? spacing : fine_spacing(order, level);
  const std::size_t elements = std::size_t{1} << level;
  const ElementGram g = element_gram(order, h);
  if (order == 0) {
    DenseMatrix out(elements, elements);
    for (std::size_t e = 0; e < elements; ++e) out(e, e) = g.gdn(0, 0);
    return out;
  }
  DenseMatrix out = g.gdn;
  for (std::size_t e = 1; e < elements; ++e) out = stack_row_overlap(out, g.gdn);
  return out;
}

}  // namespace pwave
