#include "pwave/predictor.hpp"

#include <cmath>

namespace pwave {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double double_factorial(int n) {
  double f = 1.0;
  for (int k = n; k >= 2; k -= 2) f *= k;
  return f;
}

void check_order(int order) {
  if (order < 0) throw std::invalid_argument("stencil: order must be non-negative");
  if (order > kMaxOrder) throw OrderTooLarge("stencil: order exceeds the double-precision cap");
}

}  // namespace

Stencil stencil_closed_form(int order) {
  check_order(order);
  if (order == 0) {
    DenseMatrix w(1, 1);
    w(0, 0) = 1.0;
    return {0, w};
  }
  const int q = order;
  DenseMatrix w(q, q + 1);
  for (int m = 0; m < q; ++m) {
    const double num = double_factorial(2 * m + 1) * double_factorial(2 * q - 2 * m - 1);
    for (int n = 0; n <= q; ++n) {
      const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
      const double denom = std::pow(2.0, q) * (1 + 2 * m - 2 * n) * factorial(n) * factorial(q - n);
      w(m, n) = sign * num / denom;
    }
  }
  return {q, w};
}

Stencil stencil_oracle(int order) {
  check_order(order);
  if (order == 0) {
    DenseMatrix w(1, 1);
    w(0, 0) = 1.0;
    return {0, w};
  }
  const int q = order;
  DenseMatrix w(q, q + 1);
  // Coarse nodes sit at even positions 0, 2, .., 2q; surplus at odd 2m+1.
  for (int m = 0; m < q; ++m)
    for (int n = 0; n <= q; ++n) {
      double prod = 1.0;
      for (int k = 0; k <= q; ++k) {
        if (k == n) continue;
        prod *= double(2 * (m - k) + 1) / double(2 * (n - k));
      }
      w(m, n) = prod;
    }
  return {q, w};
}

DenseMatrix assemble_predictor(int order, int level) {
  if (order < 1) throw std::invalid_argument("assemble_predictor: requires order >= 1");
  const Stencil st = stencil_closed_form(order);
  DenseMatrix out = st.weights;
  const std::size_t elements = std::size_t{1} << level;
  for (std::size_t e = 1; e < elements; ++e) out = stack_col_overlap(out, st.weights);
  return out;
}

void apply_predict(const Stencil& stencil, std::span<const double> coarse,
                   std::span<double> out) {
  const int q = stencil.order;
  if (q == 0) {
    if (out.size() != coarse.size()) throw std::invalid_argument("predict: length mismatch");
    for (std::size_t i = 0; i < coarse.size(); ++i) out[i] = coarse[i];
    return;
  }
  if (coarse.size() < std::size_t(q) + 1 || (coarse.size() - 1) % q != 0)
    throw std::invalid_argument("predict: coarse length does not tile into elements");
  const std::size_t elements = (coarse.size() - 1) / q;
  if (out.size() != elements * q) throw std::invalid_argument("predict: output length mismatch");
  const DenseMatrix& w = stencil.weights;
  for (std::size_t e = 0; e < elements; ++e) {
    const std::size_t base = e * q;
    for (int m = 0; m < q; ++m) {
      double acc = 0.0;
      for (int n = 0; n <= q; ++n) acc += w(m, n) * coarse[base + n];
      out[base + m] = acc;
    }
  }
}

std::vector<double> apply_predict(const Stencil& stencil, std::span<const double> coarse) {
  const int q = stencil.order;
  const std::size_t n = q == 0 ? coarse.size() : (coarse.size() - 1);
  std::vector<double> out(n);
  apply_predict(stencil, coarse, out);
  return out;
}

}  // namespace pwave
