#include "pwave/update.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace pwave {

const char* to_string(ProjectorKind kind) {
  switch (kind) {
    case ProjectorKind::Interpolation: return "interp";
    case ProjectorKind::CG: return "cg";
    case ProjectorKind::DG: return "dg";
  }
  return "?";
}

ProjectorKind projector_kind_from_string(const std::string& name) {
  if (name == "interp" || name == "interpolation") return ProjectorKind::Interpolation;
  if (name == "cg") return ProjectorKind::CG;
  if (name == "dg") return ProjectorKind::DG;
  throw std::invalid_argument("unknown projector kind: " + name);
}

void UpdateOp::apply(std::span<const double> beta, std::span<double> alpha, double sign) const {
  if (beta.size() != cols_ || alpha.size() != rows_)
    throw std::invalid_argument("update apply: length mismatch");
  switch (impl_) {
    case Impl::Zero:
      return;
    case Impl::HalfIdentity:
      for (std::size_t i = 0; i < rows_; ++i) alpha[i] += sign * 0.5 * beta[i];
      return;
    case Impl::ElementBlocks: {
      const std::size_t q = order_;
      for (std::size_t e = 0; e < elements_; ++e) {
        const std::size_t base = e * q;
        for (std::size_t a = 0; a <= q; ++a) {
          double acc = 0.0;
          for (std::size_t b = 0; b < q; ++b) acc += local_(a, b) * beta[base + b];
          // Nodal averaging: interior element boundaries are shared by two
          // elements, so each contribution there counts half.
          const bool shared = (a == 0 && e > 0) || (a == q && e + 1 < elements_);
          alpha[base + a] += sign * (shared ? 0.5 * acc : acc);
        }
      }
      return;
    }
    case Impl::GlobalGram: {
      const std::size_t q = order_;
      std::vector<double> rhs(rows_, 0.0);
      for (std::size_t e = 0; e < elements_; ++e) {
        const std::size_t base = e * q;
        for (std::size_t a = 0; a <= q; ++a) {
          double acc = 0.0;
          for (std::size_t b = 0; b < q; ++b) acc += gdn_(a, b) * beta[base + b];
          rhs[base + a] += acc;
        }
      }
      factor_->solve_in_place(rhs);
      for (std::size_t i = 0; i < rows_; ++i) alpha[i] += sign * rhs[i];
      return;
    }
  }
}

DenseMatrix UpdateOp::dense() const {
  DenseMatrix out(rows_, cols_);
  std::vector<double> beta(cols_, 0.0), col(rows_);
  for (std::size_t k = 0; k < cols_; ++k) {
    beta[k] = 1.0;
    std::fill(col.begin(), col.end(), 0.0);
    apply(beta, col);
    beta[k] = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) out(i, k) = col[i];
  }
  return out;
}

UpdateOp build_update(ProjectorKind kind, int order, int level) {
  if (order < 0 || level < 0) throw std::invalid_argument("build_update: bad order or level");
  UpdateOp op;
  op.order_ = order;
  op.elements_ = std::size_t{1} << level;
  if (order == 0) {
    op.rows_ = op.cols_ = op.elements_;
  } else {
    op.rows_ = std::size_t(order) * op.elements_ + 1;
    op.cols_ = std::size_t(order) * op.elements_;
  }

  if (kind == ProjectorKind::Interpolation) {
    op.impl_ = UpdateOp::Impl::Zero;
    return op;
  }
  if (order == 0) {
    // Piecewise-constant case: both projector families give the Haar update.
    op.impl_ = UpdateOp::Impl::HalfIdentity;
    return op;
  }

  // The update is scale invariant (both Gram factors are linear in the grid
  // spacing), so unit spacing is used throughout.
  const ElementGram g = element_gram(order, 1.0);
  if (kind == ProjectorKind::DG) {
    op.impl_ = UpdateOp::Impl::ElementBlocks;
    op.local_ = dense_solve(g.gdd, g.gdn);
    return op;
  }
  op.impl_ = UpdateOp::Impl::GlobalGram;
  op.gdn_ = g.gdn;
  op.factor_ = std::make_shared<BandedCholesky>(assemble_global_gram_dd(order, level, 1.0));
  return op;
}

DenseMatrix cg_update_dense_oracle(int order, int level) {
  const DenseMatrix gdd = assemble_global_gram_dd(order, level, 1.0).to_dense();
  const DenseMatrix gdn = assemble_global_gram_dn(order, level, 1.0);
  return dense_solve(gdd, gdn);
}

}  // namespace pwave
