#pragma once

#include <cmath>
#include <cstddef>

#include "nckit/error.hpp"
#include "nckit/kernels.hpp"

namespace nckit::kernels::detail {

// Neumaier step: adds x to (sum, comp).
inline void neumaier_add(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::fabs(sum) >= std::fabs(x))
    comp += (sum - t) + x;
  else
    comp += (x - t) + sum;
  sum = t;
}

inline MultiIndex drop_axis(const MultiIndex& e, std::size_t axis) {
  std::vector<int> v;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (i != axis) v.push_back(e[i]);
  return MultiIndex(std::move(v));
}

inline MultiIndex replace_axis(MultiIndex e, std::size_t axis, std::size_t n) {
  e[axis] = static_cast<int>(n);
  return e;
}

inline void check_reduce(const Tensor& t, std::size_t axis, std::size_t wlen) {
  if (axis >= t.rank()) throw ArgumentError("axis out of range");
  if (wlen != static_cast<std::size_t>(t.extent(axis)))
    throw ArgumentError("weight length does not match axis extent");
}

inline void check_apply(const Tensor& t, std::size_t axis, const Matrix& m) {
  if (axis >= t.rank()) throw ArgumentError("axis out of range");
  if (m.cols != static_cast<std::size_t>(t.extent(axis)))
    throw ArgumentError("matrix columns do not match axis extent");
  if (m.rows == 0) throw ArgumentError("matrix has no rows");
}

inline void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw ArgumentError("span lengths differ");
}

}  // namespace nckit::kernels::detail
