#include "pwave/basis.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "pwave/gram.hpp"

namespace pwave {

BasisPair cascade_primal(const TransformPlan& plan, int level) {
  const GridHierarchy& grid = plan.grid();
  if (level < 0 || level >= grid.levels())
    throw std::invalid_argument("cascade: level out of range");
  const std::size_t n = grid.node_count(grid.levels());
  const std::size_t nc = grid.node_count(level);
  const std::size_t ns = grid.surplus_count(level);

  BasisPair out{DenseMatrix(n, nc), DenseMatrix(n, ns)};
  std::vector<double> alpha(nc, 0.0);
  for (std::size_t k = 0; k < nc; ++k) {
    alpha[k] = 1.0;
    const std::vector<double> v = plan.inverse_from_level(level, alpha, {});
    alpha[k] = 0.0;
    for (std::size_t p = 0; p < n; ++p) out.phi(p, k) = v[p];
  }
  std::vector<std::vector<double>> betas(1, std::vector<double>(ns, 0.0));
  std::fill(alpha.begin(), alpha.end(), 0.0);
  for (std::size_t k = 0; k < ns; ++k) {
    betas[0][k] = 1.0;
    const std::vector<double> v = plan.inverse_from_level(level, alpha, betas);
    betas[0][k] = 0.0;
    for (std::size_t p = 0; p < n; ++p) out.psi(p, k) = v[p];
  }
  return out;
}

BasisPair cascade_dual(const TransformPlan& plan, int level) {
  const GridHierarchy& grid = plan.grid();
  if (level < 0 || level >= grid.levels())
    throw std::invalid_argument("cascade: level out of range");
  const int depth = grid.levels();
  const std::size_t n = grid.node_count(depth);
  const std::size_t nc = grid.node_count(level);
  const std::size_t ns = grid.surplus_count(level);
  const std::vector<double> eps = scaling_epsilon(grid.order(), depth);

  BasisPair out{DenseMatrix(n, nc), DenseMatrix(n, ns)};
  std::vector<double> buf(n), scratch(n);
  for (std::size_t p = 0; p < n; ++p) {
    std::fill(buf.begin(), buf.end(), 0.0);
    buf[p] = 1.0 / eps[p];
    for (int j = depth - 1; j >= level; --j) plan.forward_level_in_prefix(j, buf, scratch);
    for (std::size_t k = 0; k < nc; ++k) out.phi(p, k) = buf[k];
    for (std::size_t k = 0; k < ns; ++k) out.psi(p, k) = buf[nc + k];
  }
  return out;
}

std::vector<double> scaling_epsilon(int order, int depth) {
  if (depth < 0) throw std::invalid_argument("scaling_epsilon: negative depth");
  if (order == 0) {
    const double cell = 1.0 / double(std::size_t{1} << depth);
    return std::vector<double>(std::size_t{1} << depth, cell);
  }
  const std::size_t q = order;
  const std::size_t n = q * (std::size_t{1} << depth) + 1;
  const double h = 1.0 / double(q * (std::size_t{1} << depth));
  const std::vector<double> w = newton_cotes_weights(order);
  std::vector<double> eps(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t local = k % q;
    if (local != 0) {
      eps[k] = h * w[local];
    } else {
      double acc = 0.0;
      if (k > 0) acc += w[q];      // right end of the element on the left
      if (k + 1 < n) acc += w[0];  // left end of the element on the right
      eps[k] = h * acc;
    }
  }
  return eps;
}

std::vector<double> refine_nodal(int order, int from_level, int to_level,
                                 std::span<const double> values) {
  if (to_level < from_level) throw std::invalid_argument("refine_nodal: levels out of order");
  const Stencil st = stencil_closed_form(order);
  std::vector<double> cur(values.begin(), values.end());
  for (int j = from_level; j < to_level; ++j) {
    const std::size_t coarse = cur.size();
    const std::size_t surplus = order == 0 ? coarse : coarse - 1;
    std::vector<double> pred(surplus);
    apply_predict(st, cur, pred);
    std::vector<double> next(coarse + surplus);
    for (std::size_t k = 0; k < coarse; ++k) next[2 * k] = cur[k];
    for (std::size_t k = 0; k < surplus; ++k) next[2 * k + 1] = pred[k];
    cur = std::move(next);
  }
  return cur;
}

double l2_inner_product(int order, int level, std::span<const double> f,
                        std::span<const double> g) {
  if (f.size() != g.size()) throw std::invalid_argument("inner product: length mismatch");
  if (order == 0) {
    const double cell = 1.0 / double(f.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * g[i];
    return acc * cell;
  }
  const std::size_t q = order;
  if (f.size() < q + 1 || (f.size() - 1) % q != 0)
    throw std::invalid_argument("inner product: length does not tile into elements");
  const std::size_t elements = (f.size() - 1) / q;
  const DenseMatrix mass = element_mass_unit(order);
  const double h = 1.0 / double(q * elements);
  (void)level;
  double acc = 0.0;
  for (std::size_t e = 0; e < elements; ++e) {
    const std::size_t base = e * q;
    for (std::size_t a = 0; a <= q; ++a) {
      double row = 0.0;
      for (std::size_t b = 0; b <= q; ++b) row += mass(a, b) * g[base + b];
      acc += f[base + a] * row;
    }
  }
  return acc * h;
}

double l2_norm(int order, int level, std::span<const double> f) {
  return std::sqrt(l2_inner_product(order, level, f, f));
}

namespace {

// Exact squared L2 norm of the level's nodal basis function at node k.
double nodal_norm_sq(int order, int level, std::size_t k, std::size_t node_count,
                     const DenseMatrix& gdd_phys) {
  if (order == 0) return 1.0 / double(std::size_t{1} << level);
  const std::size_t q = order;
  const std::size_t local = k % q;
  if (local != 0) return gdd_phys(local, local);
  double acc = 0.0;
  if (k > 0) acc += gdd_phys(q, q);
  if (k + 1 < node_count) acc += gdd_phys(0, 0);
  return acc;
}

}  // namespace

LevelNorms basis_norms(const TransformPlan& plan, int level) {
  const GridHierarchy& grid = plan.grid();
  if (level < 0 || level >= grid.levels())
    throw std::invalid_argument("basis_norms: level out of range");
  const int q = grid.order();
  const std::size_t nc = grid.node_count(level);
  const std::size_t nf = grid.node_count(level + 1);
  const std::size_t ns = nf - nc;

  LevelNorms out;
  out.phi.resize(nc);
  out.psi.resize(ns);

  if (q == 0) {
    const double coarse_cell = 1.0 / double(nc);
    for (std::size_t k = 0; k < nc; ++k) out.phi[k] = std::sqrt(coarse_cell);
    // The wavelet is the fine indicator minus the updated parent: its exact
    // squared norm is half the fine cell for the Haar update and the fine
    // cell itself for the plain interpolation family.
    const double fine_cell = 0.5 * coarse_cell;
    const double psi_sq =
        plan.kind() == ProjectorKind::Interpolation ? fine_cell : 0.5 * fine_cell;
    for (std::size_t k = 0; k < ns; ++k) out.psi[k] = std::sqrt(psi_sq);
    return out;
  }

  const DenseMatrix gdd_coarse = element_gram(q, fine_spacing(q, level)).gdd;
  for (std::size_t k = 0; k < nc; ++k)
    out.phi[k] = std::sqrt(nodal_norm_sq(q, level, k, nc, gdd_coarse));

  // psi_{j,k} = phi_{j+1,k} - sum_p U(p,k) phi_{j,p}, so
  // |psi|^2 = |phi_{j+1,k}|^2 - 2 u^T g + u^T G u with g the coarse/surplus
  // Gram column and G the coarse Gram, both scale-invariant up to h.  For
  // the exact Gram solve (CG) the quadratic term collapses onto u^T g.
  const DenseMatrix gdd_fine = element_gram(q, fine_spacing(q, level + 1)).gdd;
  const ElementGram unit = element_gram(q, 1.0);
  const double h = fine_spacing(q, level);
  const ProjectorKind kind = plan.kind();

  std::optional<BandedCholesky> cg_factor;
  if (kind == ProjectorKind::CG)
    cg_factor.emplace(assemble_global_gram_dd(q, level, 1.0));
  std::optional<BandedSPDMatrix> gram_unit;
  DenseMatrix dg_local;
  if (kind == ProjectorKind::DG) {
    gram_unit.emplace(assemble_global_gram_dd(q, level, 1.0));
    dg_local = dense_solve(unit.gdd, unit.gdn);
  }

  std::vector<double> col(nc);
  for (std::size_t s = 0; s < ns; ++s) {
    const std::size_t fine_node = 2 * s + 1;
    const double phi_fine_sq = nodal_norm_sq(q, level + 1, fine_node, nf, gdd_fine);
    const std::size_t e = s / q;
    const std::size_t m = s % q;
    double correction = 0.0;
    if (kind == ProjectorKind::CG) {
      std::fill(col.begin(), col.end(), 0.0);
      for (std::size_t a = 0; a <= std::size_t(q); ++a) col[e * q + a] = unit.gdn(a, m);
      std::vector<double> u = cg_factor->solve(col);
      double udotg = 0.0;
      for (std::size_t a = 0; a <= std::size_t(q); ++a)
        udotg += u[e * q + a] * unit.gdn(a, m);
      correction = -udotg;
    } else if (kind == ProjectorKind::DG) {
      const std::size_t elements = grid.element_count(level);
      auto u_entry = [&](std::size_t a) {
        const bool shared = (a == 0 && e > 0) || (a == std::size_t(q) && e + 1 < elements);
        return (shared ? 0.5 : 1.0) * dg_local(a, m);
      };
      double udotg = 0.0, ugu = 0.0;
      for (std::size_t a = 0; a <= std::size_t(q); ++a) {
        const double ua = u_entry(a);
        udotg += ua * unit.gdn(a, m);
        for (std::size_t b = 0; b <= std::size_t(q); ++b)
          ugu += ua * gram_unit->get(e * q + a, e * q + b) * u_entry(b);
      }
      correction = ugu - 2.0 * udotg;
    }
    out.psi[s] = std::sqrt(phi_fine_sq + h * correction);
  }
  return out;
}

}  // namespace pwave
