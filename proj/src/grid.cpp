#include "pwave/grid.hpp"

#include <stdexcept>

namespace pwave {

GridHierarchy::GridHierarchy(int order, int levels) : order_(order), levels_(levels) {
  if (order < 0) throw std::invalid_argument("grid: order must be non-negative");
  if (levels < 1) throw std::invalid_argument("grid: at least one level required");
  index_sets_.reserve(levels);
  for (int j = 0; j < levels; ++j) {
    IndexSets idx;
    const std::size_t fine = node_count(j + 1);
    for (std::size_t k = 0; k < fine; ++k) (k % 2 == 0 ? idx.delta : idx.nabla).push_back(k);
    index_sets_.push_back(std::move(idx));
  }
}

std::size_t GridHierarchy::node_count(int level) const {
  if (level < 0 || level > levels_) throw std::invalid_argument("grid: level out of range");
  const std::size_t cells = std::size_t{1} << level;
  return order_ == 0 ? cells : std::size_t(order_) * cells + 1;
}

std::size_t GridHierarchy::surplus_count(int level) const {
  return node_count(level + 1) - node_count(level);
}

double GridHierarchy::spacing(int level) const {
  const double cells = double(std::size_t{1} << level);
  return order_ == 0 ? 1.0 / cells : 1.0 / (order_ * cells);
}

double GridHierarchy::node_coordinate(int level, std::size_t k) const {
  return double(k) * spacing(level);
}

const IndexSets& GridHierarchy::index_sets(int level) const {
  if (level < 0 || level >= levels_) throw std::invalid_argument("grid: transition out of range");
  return index_sets_[level];
}

std::size_t CoefficientPyramid::total_size() const {
  std::size_t n = alpha0.size();
  for (const auto& b : betas) n += b.size();
  return n;
}

std::vector<double> CoefficientPyramid::flatten() const {
  std::vector<double> out;
  out.reserve(total_size());
  out.insert(out.end(), alpha0.begin(), alpha0.end());
  for (const auto& b : betas) out.insert(out.end(), b.begin(), b.end());
  return out;
}

CoefficientPyramid CoefficientPyramid::from_flat(int order, int levels,
                                                 std::span<const double> values) {
  GridHierarchy grid(order, levels);
  CoefficientPyramid pyr;
  pyr.order = order;
  pyr.levels = levels;
  std::size_t pos = 0;
  auto take = [&](std::size_t n) {
    if (pos + n > values.size()) throw std::invalid_argument("pyramid: flat vector too short");
    std::vector<double> part(values.begin() + pos, values.begin() + pos + n);
    pos += n;
    return part;
  };
  pyr.alpha0 = take(grid.node_count(0));
  for (int j = 0; j < levels; ++j) pyr.betas.push_back(take(grid.surplus_count(j)));
  if (pos != values.size()) throw std::invalid_argument("pyramid: flat vector too long");
  return pyr;
}

std::pair<std::vector<double>, std::vector<double>> split(std::span<const double> v,
                                                          const IndexSets& idx) {
  if (v.size() != idx.total()) throw std::invalid_argument("split: length mismatch");
  std::vector<double> coarse(idx.delta.size()), surplus(idx.nabla.size());
  for (std::size_t i = 0; i < idx.delta.size(); ++i) coarse[i] = v[idx.delta[i]];
  for (std::size_t i = 0; i < idx.nabla.size(); ++i) surplus[i] = v[idx.nabla[i]];
  return {std::move(coarse), std::move(surplus)};
}

std::vector<double> merge(std::span<const double> coarse, std::span<const double> surplus,
                          const IndexSets& idx) {
  if (coarse.size() != idx.delta.size() || surplus.size() != idx.nabla.size())
    throw std::invalid_argument("merge: length mismatch");
  std::vector<double> out(idx.total());
  for (std::size_t i = 0; i < idx.delta.size(); ++i) out[idx.delta[i]] = coarse[i];
  for (std::size_t i = 0; i < idx.nabla.size(); ++i) out[idx.nabla[i]] = surplus[i];
  return out;
}

namespace {

std::size_t admissible_size(int order, int levels) {
  const std::size_t cells = std::size_t{1} << levels;
  return order == 0 ? cells : std::size_t(order) * cells + 1;
}

}  // namespace

std::optional<std::string> validate_input_length(std::size_t n, int order, int levels) {
  if (order < 0 || levels < 1) return "order must be >= 0 and levels >= 1";
  if (n == admissible_size(order, levels)) return std::nullopt;
  // Name the two admissible sizes bracketing n for this order.
  std::size_t below = 0, above = 0;
  for (int j = 1; j < 60; ++j) {
    const std::size_t s = admissible_size(order, j);
    if (s <= n) below = s;
    if (s >= n) {
      above = s;
      break;
    }
  }
  std::string msg = "size " + std::to_string(n) + " is not admissible for order " +
                    std::to_string(order) + " with " + std::to_string(levels) +
                    " levels (expected " + std::to_string(admissible_size(order, levels)) + ")";
  msg += "; nearest admissible sizes:";
  if (below) msg += " " + std::to_string(below);
  if (above && above != below) msg += " " + std::to_string(above);
  return msg;
}

std::optional<int> levels_for_size(std::size_t n, int order) {
  for (int j = 1; j < 60; ++j) {
    const std::size_t s = admissible_size(order, j);
    if (s == n) return j;
    if (s > n) break;
  }
  return std::nullopt;
}

}  // namespace pwave
