#include "pwave/tensor.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "pwave/basis.hpp"

namespace pwave {

const char* to_string(Ordering ordering) {
  return ordering == Ordering::Mallat ? "mallat" : "separable";
}

Ordering ordering_from_string(const std::string& name) {
  if (name == "mallat") return Ordering::Mallat;
  if (name == "separable") return Ordering::Separable;
  throw std::invalid_argument("unknown ordering: " + name);
}

TensorArray::TensorArray(std::vector<std::size_t> dims, double fill) : dims_(std::move(dims)) {
  std::size_t n = 1;
  for (std::size_t d : dims_) n *= d;
  data_.assign(n, fill);
}

TensorArray::TensorArray(std::vector<std::size_t> dims, std::vector<double> values)
    : dims_(std::move(dims)), data_(std::move(values)) {
  std::size_t n = 1;
  for (std::size_t d : dims_) n *= d;
  if (n != data_.size()) throw std::invalid_argument("tensor: size does not match the dims");
}

TensorTransform::TensorTransform(ProjectorKind kind, int order, std::vector<int> levels_per_axis)
    : kind_(kind), order_(order), levels_(std::move(levels_per_axis)) {
  if (levels_.empty() || levels_.size() > 3)
    throw std::invalid_argument("tensor transform: 1 to 3 axes supported");
  plans_.reserve(levels_.size());
  for (int levels : levels_) plans_.emplace_back(kind, order, levels);
}

TensorTransform TensorTransform::for_shape(ProjectorKind kind, int order,
                                           const std::vector<std::size_t>& dims) {
  std::vector<int> levels;
  for (std::size_t n : dims) {
    const std::optional<int> j = levels_for_size(n, order);
    if (!j) {
      // reuse the 1D diagnostic with a plausible level count
      auto msg = validate_input_length(n, order, 1);
      throw std::invalid_argument(msg ? *msg : "inadmissible axis size");
    }
    levels.push_back(*j);
  }
  return TensorTransform(kind, order, std::move(levels));
}

std::vector<std::size_t> TensorTransform::shape() const {
  std::vector<std::size_t> s;
  for (std::size_t a = 0; a < plans_.size(); ++a)
    s.push_back(plans_[a].grid().node_count(levels_[a]));
  return s;
}

int TensorTransform::max_level() const {
  return *std::max_element(levels_.begin(), levels_.end());
}

namespace {

std::vector<std::size_t> row_major_strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

// Visit the base offset of every line along `axis` whose other-axis indices
// range over [0, extent_b).
template <typename Fn>
void for_each_line(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& extents,
                   std::size_t axis, Fn&& fn) {
  const std::vector<std::size_t> strides = row_major_strides(dims);
  const std::size_t rank = dims.size();
  std::vector<std::size_t> idx(rank, 0);
  while (true) {
    std::size_t offset = 0;
    for (std::size_t a = 0; a < rank; ++a)
      if (a != axis) offset += idx[a] * strides[a];
    fn(offset, strides[axis]);
    // odometer over the non-transformed axes, last axis fastest
    bool done = true;
    std::size_t a = rank;
    while (a-- > 0) {
      if (a == axis) continue;
      if (++idx[a] < extents[a]) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
    if (done) return;
  }
}

}  // namespace

TensorArray TensorTransform::forward(const TensorArray& data, Ordering ordering) const {
  if (data.dims() != shape()) throw std::invalid_argument("tensor forward: shape mismatch");
  TensorArray out = data;
  const std::size_t rank = plans_.size();
  std::vector<double> line, scratch;

  auto transform_lines = [&](std::size_t axis, const std::vector<std::size_t>& extents,
                             std::size_t length, auto&& body) {
    line.resize(length);
    scratch.resize(length);
    for_each_line(data.dims(), extents, axis, [&](std::size_t offset, std::size_t stride) {
      for (std::size_t i = 0; i < length; ++i) line[i] = out[offset + i * stride];
      body(line, scratch);
      for (std::size_t i = 0; i < length; ++i) out[offset + i * stride] = line[i];
    });
  };

  if (ordering == Ordering::Separable) {
    for (std::size_t a = rank; a-- > 0;) {
      const TransformPlan& plan = plans_[a];
      transform_lines(a, data.dims(), data.dims()[a], [&](auto& buf, auto& tmp) {
        for (int j = levels_[a] - 1; j >= 0; --j)
          plan.forward_level_in_prefix(j, buf, tmp);
      });
    }
    return out;
  }

  // Level-by-level: one lifting step on every axis, then recurse on the
  // low-pass corner block.
  const int steps = max_level();
  for (int t = 1; t <= steps; ++t) {
    std::vector<std::size_t> extents(rank);
    for (std::size_t b = 0; b < rank; ++b)
      extents[b] = plans_[b].grid().node_count(std::max(levels_[b] - (t - 1), 0));
    for (std::size_t a = rank; a-- > 0;) {
      if (levels_[a] < t) continue;
      const int level = levels_[a] - t;
      const TransformPlan& plan = plans_[a];
      transform_lines(a, extents, plan.grid().node_count(level + 1), [&](auto& buf, auto& tmp) {
        plan.forward_level_in_prefix(level, buf, tmp);
      });
    }
  }
  return out;
}

TensorArray TensorTransform::inverse(const TensorArray& coeffs, Ordering ordering) const {
  if (coeffs.dims() != shape()) throw std::invalid_argument("tensor inverse: shape mismatch");
  TensorArray out = coeffs;
  const std::size_t rank = plans_.size();
  std::vector<double> line, scratch;

  auto transform_lines = [&](std::size_t axis, const std::vector<std::size_t>& extents,
                             std::size_t length, auto&& body) {
    line.resize(length);
    scratch.resize(length);
    for_each_line(coeffs.dims(), extents, axis, [&](std::size_t offset, std::size_t stride) {
      for (std::size_t i = 0; i < length; ++i) line[i] = out[offset + i * stride];
      body(line, scratch);
      for (std::size_t i = 0; i < length; ++i) out[offset + i * stride] = line[i];
    });
  };

  if (ordering == Ordering::Separable) {
    for (std::size_t a = 0; a < rank; ++a) {
      const TransformPlan& plan = plans_[a];
      transform_lines(a, coeffs.dims(), coeffs.dims()[a], [&](auto& buf, auto& tmp) {
        for (int j = 0; j < levels_[a]; ++j) plan.inverse_level_in_prefix(j, buf, tmp);
      });
    }
    return out;
  }

  const int steps = max_level();
  for (int t = steps; t >= 1; --t) {
    std::vector<std::size_t> extents(rank);
    for (std::size_t b = 0; b < rank; ++b)
      extents[b] = plans_[b].grid().node_count(std::max(levels_[b] - (t - 1), 0));
    for (std::size_t a = 0; a < rank; ++a) {
      if (levels_[a] < t) continue;
      const int level = levels_[a] - t;
      const TransformPlan& plan = plans_[a];
      transform_lines(a, extents, plan.grid().node_count(level + 1), [&](auto& buf, auto& tmp) {
        plan.inverse_level_in_prefix(level, buf, tmp);
      });
    }
  }
  return out;
}

namespace {

// 1D region of an index inside the in-prefix pyramid layout: -1 for the
// coarsest scaling block, otherwise the level whose details contain it.
int region_of(const GridHierarchy& grid, int levels, std::size_t i) {
  if (i < grid.node_count(0)) return -1;
  for (int j = 0; j < levels; ++j)
    if (i < grid.node_count(j + 1)) return j;
  throw std::logic_error("index beyond the finest level");
}

}  // namespace

CoefficientMeta TensorTransform::coefficient_meta(Ordering ordering) const {
  const std::vector<std::size_t> dims = shape();
  const std::vector<std::size_t> strides = row_major_strides(dims);
  const std::size_t rank = dims.size();
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;

  // per-axis norm tables
  std::vector<std::vector<LevelNorms>> norms(rank);
  for (std::size_t a = 0; a < rank; ++a)
    for (int j = 0; j < levels_[a]; ++j) norms[a].push_back(basis_norms(plans_[a], j));

  CoefficientMeta meta;
  meta.label.resize(total);
  meta.norm.resize(total);

  std::vector<std::size_t> idx(rank);
  std::vector<int> region(rank);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    for (std::size_t a = 0; a < rank; ++a) {
      idx[a] = rem / strides[a];
      rem %= strides[a];
      region[a] = region_of(plans_[a].grid(), levels_[a], idx[a]);
    }

    double w = 1.0;
    int label = 0;
    if (ordering == Ordering::Separable) {
      for (std::size_t a = 0; a < rank; ++a) {
        if (region[a] < 0) {
          w *= norms[a][0].phi[idx[a]];
        } else {
          w *= norms[a][region[a]].psi[idx[a] - plans_[a].grid().node_count(region[a])];
          label = std::max(label, region[a] + 1);
        }
      }
    } else {
      // The subband a coefficient belongs to is fixed by the step at which
      // its position left the shrinking low-pass box.
      int step = std::numeric_limits<int>::max();
      for (std::size_t a = 0; a < rank; ++a)
        if (region[a] >= 0) step = std::min(step, levels_[a] - region[a]);
      if (step == std::numeric_limits<int>::max()) {
        for (std::size_t a = 0; a < rank; ++a) w *= norms[a][0].phi[idx[a]];
      } else {
        for (std::size_t a = 0; a < rank; ++a) {
          const int la = levels_[a] - step;
          if (region[a] >= 0 && levels_[a] - region[a] == step) {
            w *= norms[a][la].psi[idx[a] - plans_[a].grid().node_count(la)];
            label = std::max(label, la + 1);
          } else {
            w *= norms[a][std::max(la, 0)].phi[idx[a]];
          }
        }
      }
    }
    meta.label[i] = label;
    meta.norm[i] = w;
  }
  return meta;
}

std::vector<std::size_t> TensorTransform::pyramid_order(Ordering ordering) const {
  const std::vector<std::size_t> dims = shape();
  const std::vector<std::size_t> strides = row_major_strides(dims);
  const std::size_t rank = dims.size();
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;

  std::vector<std::size_t> order;
  order.reserve(total);
  if (ordering == Ordering::Separable) {
    for (std::size_t i = 0; i < total; ++i) order.push_back(i);
    return order;
  }

  // append a row-major block given per-axis [lo, hi) ranges
  auto append_block = [&](const std::vector<std::size_t>& lo, const std::vector<std::size_t>& hi) {
    std::vector<std::size_t> idx(lo);
    for (std::size_t a = 0; a < rank; ++a)
      if (lo[a] >= hi[a]) return;
    while (true) {
      std::size_t offset = 0;
      for (std::size_t a = 0; a < rank; ++a) offset += idx[a] * strides[a];
      order.push_back(offset);
      std::size_t a = rank;
      while (a-- > 0) {
        if (++idx[a] < hi[a]) break;
        idx[a] = lo[a];
        if (a == 0) return;
      }
    }
  };

  // coarsest corner block first
  std::vector<std::size_t> lo(rank, 0), hi(rank);
  for (std::size_t a = 0; a < rank; ++a) hi[a] = plans_[a].grid().node_count(0);
  append_block(lo, hi);

  // then per step from coarse to fine, subbands ordered by axis mask
  for (int t = max_level(); t >= 1; --t) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << rank); ++mask) {
      bool valid = true;
      for (std::size_t a = 0; a < rank; ++a)
        if (((mask >> a) & 1) && levels_[a] < t) valid = false;
      if (!valid) continue;
      for (std::size_t a = 0; a < rank; ++a) {
        const GridHierarchy& grid = plans_[a].grid();
        if ((mask >> a) & 1) {
          lo[a] = grid.node_count(levels_[a] - t);
          hi[a] = grid.node_count(levels_[a] - t + 1);
        } else {
          lo[a] = 0;
          hi[a] = grid.node_count(std::max(levels_[a] - t, 0));
        }
      }
      append_block(lo, hi);
    }
  }
  if (order.size() != total) throw std::logic_error("pyramid order does not cover the array");
  return order;
}

}  // namespace pwave
