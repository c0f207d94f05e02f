#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pwave/dense.hpp"

namespace pwave {

// Nested dyadic grids on [0,1].  For order q >= 1 level j carries 2^j
// elements with q*2^j + 1 nodes at spacing 1/(q*2^j); for q = 0 level j
// carries 2^j cells whose left endpoints serve as nodes.  Coarse nodes sit
// at the even indices of the next finer grid, surplus nodes at the odd
// indices; coordinates are implicit (x_k = k * h_j) and never stored.
class GridHierarchy {
public:
  GridHierarchy(int order, int levels);

  int order() const { return order_; }
  int levels() const { return levels_; }

  // Number of nodes of the level-j grid, 0 <= j <= levels.
  std::size_t node_count(int level) const;
  // Number of surplus nodes between level j and j+1, 0 <= j < levels.
  std::size_t surplus_count(int level) const;
  std::size_t element_count(int level) const { return std::size_t{1} << level; }

  double spacing(int level) const;
  double node_coordinate(int level, std::size_t k) const;

  // Coarse/surplus index positions inside the level-(j+1) grid.
  const IndexSets& index_sets(int level) const;

private:
  int order_ = 1;
  int levels_ = 1;
  std::vector<IndexSets> index_sets_;  // one per transition j -> j+1
};

// Transform output: coarsest scaling coefficients plus one detail vector per
// level, ordered coarse to fine.  Within each level the detail coefficients
// follow ascending node index.
struct CoefficientPyramid {
  int order = 1;
  int levels = 1;
  std::vector<double> alpha0;
  std::vector<std::vector<double>> betas;

  std::size_t total_size() const;
  std::vector<double> flatten() const;
  static CoefficientPyramid from_flat(int order, int levels, std::span<const double> values);
};

// Scatter a fine-grid vector into its coarse and surplus parts.
std::pair<std::vector<double>, std::vector<double>> split(std::span<const double> v,
                                                          const IndexSets& idx);

// Exact inverse of split.
std::vector<double> merge(std::span<const double> coarse, std::span<const double> surplus,
                          const IndexSets& idx);

// Admissible input lengths are q*2^J + 1 (q >= 1) or 2^J (q = 0).  Returns
// an empty optional when n is admissible for the given q and J, otherwise a
// diagnostic naming the nearest admissible sizes.
std::optional<std::string> validate_input_length(std::size_t n, int order, int levels);

// Number of levels J with n = q*2^J + 1 (or 2^J for q = 0), if any.
std::optional<int> levels_for_size(std::size_t n, int order);

}  // namespace pwave
