#pragma once

// Data-parallel building blocks shared by every module. Each kernel exists
// twice: a plain serial reference in nckit::kernels::serial and an OpenMP
// version in nckit::kernels::omp. Both evaluate every output element with the
// same summation order, so their results are bit-identical; the dispatchers in
// nckit::kernels pick one according to nckit::backend().

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nckit/tensor.hpp"

namespace nckit {

/// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  Matrix transposed() const;
};

enum class Summation { plain, compensated };

namespace kernels {

#define NCKIT_KERNEL_DECLS                                                                    \
  /* out[o, i] = sum_k t[o, k, i] * w[k]; drops `axis`. */                                    \
  Tensor reduce_axis(const Tensor& t, std::size_t axis, std::span<const double> w,            \
                     Summation mode);                                                         \
  /* out[o, r, i] = sum_c m(r, c) * t[o, c, i]; m.cols must equal the axis extent. */         \
  Tensor apply_axis(const Tensor& t, std::size_t axis, const Matrix& m, Summation mode);      \
  /* out = num / den elementwise; entries with num == 0 give 0. Returns the number of */     \
  /* entries with num > 0 and den <= 0 (those are set to 0). */                               \
  std::size_t safe_ratio(std::span<const double> num, std::span<const double> den,            \
                         std::span<double> out);                                              \
  /* a[i] *= b[i] */                                                                          \
  void multiply_inplace(std::span<double> a, std::span<const double> b);

namespace serial {
NCKIT_KERNEL_DECLS
}  // namespace serial

namespace omp {
NCKIT_KERNEL_DECLS
}  // namespace omp

NCKIT_KERNEL_DECLS

#undef NCKIT_KERNEL_DECLS

/// Sums over `axis`.
Tensor sum_axis(const Tensor& t, std::size_t axis);

/// Sum over n of t(n) * prod_j w_j(n_j). An empty weight vector means all ones.
double contract(const Tensor& t, const std::vector<std::vector<double>>& weights,
                Summation mode = Summation::plain);

/// Contracts the axes that have a weight vector and keeps the rest (in order).
Tensor contract_partial(const Tensor& t, const std::vector<std::optional<std::vector<double>>>& weights,
                        Summation mode = Summation::plain);

/// Sum over n of t(n) * w(n_axis).
double contract_axis_scalar(const Tensor& t, int axis, std::span<const double> w);

}  // namespace kernels
}  // namespace nckit
