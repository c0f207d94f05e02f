#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pwave/lifting.hpp"

namespace pwave {

// How the one-dimensional transform is extended over the axes: level by
// level across all axes with recursion on the low-pass block, or the full
// one-dimensional transform applied axis by axis.
enum class Ordering { Mallat = 0, Separable = 1 };

const char* to_string(Ordering ordering);
Ordering ordering_from_string(const std::string& name);

// Row-major array of up to three axes.
class TensorArray {
public:
  TensorArray() = default;
  explicit TensorArray(std::vector<std::size_t> dims, double fill = 0.0);
  TensorArray(std::vector<std::size_t> dims, std::vector<double> values);

  std::size_t rank() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

private:
  std::vector<std::size_t> dims_;
  std::vector<double> data_;
};

// Per-coefficient structure of a transformed array: the level label (0 for
// the coarsest scaling block, j+1 for details created at level j) and the
// L2 norm of the associated tensor-product basis function.
struct CoefficientMeta {
  std::vector<int> label;
  std::vector<double> norm;
};

// Transform plans for every axis of a tensor grid.  All axes share the
// projector family and order; the level count may differ per axis.
class TensorTransform {
public:
  TensorTransform(ProjectorKind kind, int order, std::vector<int> levels_per_axis);

  // Infer the per-axis level counts from the array sizes; throws with a
  // diagnostic naming the nearest admissible sizes otherwise.
  static TensorTransform for_shape(ProjectorKind kind, int order,
                                   const std::vector<std::size_t>& dims);

  ProjectorKind kind() const { return kind_; }
  int order() const { return order_; }
  std::size_t rank() const { return plans_.size(); }
  const TransformPlan& axis_plan(std::size_t axis) const { return plans_[axis]; }
  const std::vector<int>& levels() const { return levels_; }
  std::vector<std::size_t> shape() const;
  int max_level() const;

  TensorArray forward(const TensorArray& data, Ordering ordering) const;
  TensorArray inverse(const TensorArray& coeffs, Ordering ordering) const;

  CoefficientMeta coefficient_meta(Ordering ordering) const;

  // Serialization order of the coefficients: position p in a stored stream
  // maps to linear index order[p].  The separable layout is plain row-major;
  // the level-by-level layout lists the coarsest corner block first and then
  // each level's subbands ordered by binary axis mask (bit a set = detail
  // along axis a), each block row-major.
  std::vector<std::size_t> pyramid_order(Ordering ordering) const;

private:
  ProjectorKind kind_;
  int order_;
  std::vector<int> levels_;
  std::vector<TransformPlan> plans_;
};

}  // namespace pwave
