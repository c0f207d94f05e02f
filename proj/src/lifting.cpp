#include "pwave/lifting.hpp"

#include <algorithm>
#include <stdexcept>

namespace pwave {

TransformPlan::TransformPlan(ProjectorKind kind, int order, int levels)
    : kind_(kind), grid_(order, levels), stencil_(stencil_closed_form(order)) {
  ops_.reserve(levels);
  for (int j = 0; j < levels; ++j) ops_.push_back({j, build_update(kind, order, j)});
}

void TransformPlan::forward_level_in_prefix(int level, std::span<double> buf,
                                            std::span<double> scratch) const {
  const std::size_t fine = grid_.node_count(level + 1);
  const std::size_t coarse = grid_.node_count(level);
  const std::size_t surplus = fine - coarse;
  if (buf.size() < fine || scratch.size() < fine)
    throw std::invalid_argument("forward level: buffer too short");

  // Split: even nodes carry the coarse values, odd nodes the surplus values.
  std::span<double> alpha = scratch.subspan(0, coarse);
  std::span<double> beta = scratch.subspan(coarse, surplus);
  for (std::size_t k = 0; k < coarse; ++k) alpha[k] = buf[2 * k];

  // Predict: details are the interpolation mismatch at the surplus nodes.
  apply_predict(stencil_, alpha, beta);
  for (std::size_t k = 0; k < surplus; ++k) beta[k] = buf[2 * k + 1] - beta[k];

  // Update: lift the coarse values toward the projected approximation.
  ops_[level].update.apply(beta, alpha);

  for (std::size_t i = 0; i < fine; ++i) buf[i] = scratch[i];
}

void TransformPlan::inverse_level_in_prefix(int level, std::span<double> buf,
                                            std::span<double> scratch) const {
  const std::size_t fine = grid_.node_count(level + 1);
  const std::size_t coarse = grid_.node_count(level);
  const std::size_t surplus = fine - coarse;
  if (buf.size() < fine || scratch.size() < fine)
    throw std::invalid_argument("inverse level: buffer too short");

  std::span<double> alpha = buf.subspan(0, coarse);
  std::span<double> beta = buf.subspan(coarse, surplus);

  // Undo the update, then re-add the prediction to the details.
  ops_[level].update.apply(beta, alpha, -1.0);
  apply_predict(stencil_, alpha, scratch.subspan(0, surplus));
  for (std::size_t k = 0; k < surplus; ++k) scratch[k] += beta[k];

  // Merge back into interleaved order.  Expanding the coarse values to the
  // even slots in descending order never overwrites an unread entry; the odd
  // slots are then filled from scratch.
  for (std::size_t k = coarse; k-- > 0;) buf[2 * k] = buf[k];
  for (std::size_t k = 0; k < surplus; ++k) buf[2 * k + 1] = scratch[k];
}

std::pair<std::vector<double>, std::vector<double>> TransformPlan::forward_level(
    int level, std::span<const double> fine) const {
  const std::size_t n = grid_.node_count(level + 1);
  if (fine.size() != n) throw std::invalid_argument("forward level: length mismatch");
  std::vector<double> buf(fine.begin(), fine.end()), scratch(n);
  forward_level_in_prefix(level, buf, scratch);
  const std::size_t coarse = grid_.node_count(level);
  std::vector<double> alpha(buf.begin(), buf.begin() + coarse);
  std::vector<double> beta(buf.begin() + coarse, buf.end());
  return {std::move(alpha), std::move(beta)};
}

std::vector<double> TransformPlan::inverse_level(int level, std::span<const double> alpha,
                                                 std::span<const double> beta) const {
  const std::size_t coarse = grid_.node_count(level);
  const std::size_t n = grid_.node_count(level + 1);
  if (alpha.size() != coarse || beta.size() != n - coarse)
    throw std::invalid_argument("inverse level: length mismatch");
  std::vector<double> buf(n), scratch(n);
  std::copy(alpha.begin(), alpha.end(), buf.begin());
  std::copy(beta.begin(), beta.end(), buf.begin() + coarse);
  inverse_level_in_prefix(level, buf, scratch);
  return buf;
}

CoefficientPyramid TransformPlan::forward(std::span<const double> data) const {
  const int levels = grid_.levels();
  if (data.size() != grid_.node_count(levels))
    throw std::invalid_argument("forward: input length does not match the grid");
  std::vector<double> buf(data.begin(), data.end()), scratch(data.size());
  for (int j = levels - 1; j >= 0; --j) forward_level_in_prefix(j, buf, scratch);

  CoefficientPyramid pyr;
  pyr.order = grid_.order();
  pyr.levels = levels;
  const std::size_t n0 = grid_.node_count(0);
  pyr.alpha0.assign(buf.begin(), buf.begin() + n0);
  std::size_t pos = n0;
  for (int j = 0; j < levels; ++j) {
    const std::size_t s = grid_.surplus_count(j);
    pyr.betas.emplace_back(buf.begin() + pos, buf.begin() + pos + s);
    pos += s;
  }
  return pyr;
}

std::vector<double> TransformPlan::inverse(const CoefficientPyramid& pyramid) const {
  if (pyramid.levels != grid_.levels() || pyramid.order != grid_.order())
    throw std::invalid_argument("inverse: pyramid does not match the plan");
  return inverse_from_level(0, pyramid.alpha0, pyramid.betas);
}

std::vector<double> TransformPlan::coarse_approximation(std::span<const double> data,
                                                        int level) const {
  const int levels = grid_.levels();
  if (level < 0 || level > levels) throw std::invalid_argument("coarse approximation: bad level");
  std::vector<double> buf(data.begin(), data.end()), scratch(data.size());
  for (int j = levels - 1; j >= level; --j) forward_level_in_prefix(j, buf, scratch);
  buf.resize(grid_.node_count(level));
  return buf;
}

std::vector<double> TransformPlan::inverse_from_level(
    int level, std::span<const double> alpha,
    std::span<const std::vector<double>> betas) const {
  const int levels = grid_.levels();
  if (alpha.size() != grid_.node_count(level))
    throw std::invalid_argument("inverse: coarse length does not match the level");
  std::vector<double> buf(grid_.node_count(levels), 0.0), scratch(buf.size());
  std::copy(alpha.begin(), alpha.end(), buf.begin());
  for (int j = level; j < levels; ++j) {
    const std::size_t coarse = grid_.node_count(j);
    const std::size_t surplus = grid_.surplus_count(j);
    const std::size_t i = std::size_t(j - level);
    if (i < betas.size() && !betas[i].empty()) {
      if (betas[i].size() != surplus)
        throw std::invalid_argument("inverse: detail length does not match the level");
      std::copy(betas[i].begin(), betas[i].end(), buf.begin() + coarse);
    } else {
      std::fill(buf.begin() + coarse, buf.begin() + coarse + surplus, 0.0);
    }
    inverse_level_in_prefix(j, buf, scratch);
  }
  return buf;
}

DenseMatrix predictor_dense(const TransformPlan& plan, int level) {
  if (plan.order() == 0) return DenseMatrix::identity(plan.grid().surplus_count(level));
  return assemble_predictor(plan.order(), level);
}

LevelMatrices level_matrices(const TransformPlan& plan, int level) {
  const IndexSets& idx = plan.grid().index_sets(level);
  const DenseMatrix p = predictor_dense(plan, level);
  const DenseMatrix u = plan.update(level).dense();
  const DenseMatrix ic = DenseMatrix::identity(idx.delta.size());
  const DenseMatrix is = DenseMatrix::identity(idx.nabla.size());
  LevelMatrices m;
  m.a = merge_cols(ic - u * p, u, idx);
  m.b = merge_cols(p.scaled(-1.0), is, idx);
  m.c = merge_rows(ic, p, idx);
  m.d = merge_rows(u.scaled(-1.0), is - p * u, idx);
  return m;
}

namespace {

DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom) {
  DenseMatrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < bottom.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

DenseMatrix hstack(const DenseMatrix& left, const DenseMatrix& right) {
  DenseMatrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) out(i, left.cols() + j) = right(i, j);
  }
  return out;
}

DenseMatrix pad_with_identity(const DenseMatrix& m, std::size_t total) {
  if (m.rows() == total) return m;
  return block_diag(m, DenseMatrix::identity(total - m.rows()));
}

}  // namespace

DenseMatrix composite_matrix(const TransformPlan& plan) {
  const std::size_t n = plan.grid().node_count(plan.levels());
  DenseMatrix m = DenseMatrix::identity(n);
  for (int j = plan.levels() - 1; j >= 0; --j) {
    const LevelMatrices lm = level_matrices(plan, j);
    m = pad_with_identity(vstack(lm.a, lm.b), n) * m;
  }
  return m;
}

DenseMatrix composite_matrix_inverse(const TransformPlan& plan) {
  const std::size_t n = plan.grid().node_count(plan.levels());
  DenseMatrix m = DenseMatrix::identity(n);
  for (int j = 0; j < plan.levels(); ++j) {
    const LevelMatrices lm = level_matrices(plan, j);
    m = pad_with_identity(hstack(lm.c, lm.d), n) * m;
  }
  return m;
}

}  // namespace pwave
