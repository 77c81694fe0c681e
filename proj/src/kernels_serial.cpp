#include <vector>

#include "kernels_common.hpp"

namespace nckit::kernels::serial {

using detail::neumaier_add;

Tensor reduce_axis(const Tensor& t, std::size_t axis, std::span<const double> w, Summation mode) {
  detail::check_reduce(t, axis, w.size());
  const auto [outer, len, inner] = split_at(t.extents(), axis);
  Tensor out(detail::drop_axis(t.extents(), axis), 0.0);
  const double* src = t.data().data();
  double* dst = out.data().data();
  if (mode == Summation::plain) {
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t k = 0; k < len; ++k)
        for (std::size_t i = 0; i < inner; ++i)
          dst[o * inner + i] += src[(o * len + k) * inner + i] * w[k];
    return out;
  }
  std::vector<double> comp(inner);
  for (std::size_t o = 0; o < outer; ++o) {
    std::fill(comp.begin(), comp.end(), 0.0);
    for (std::size_t k = 0; k < len; ++k)
      for (std::size_t i = 0; i < inner; ++i)
        neumaier_add(dst[o * inner + i], comp[i], src[(o * len + k) * inner + i] * w[k]);
    for (std::size_t i = 0; i < inner; ++i) dst[o * inner + i] += comp[i];
  }
  return out;
}

Tensor apply_axis(const Tensor& t, std::size_t axis, const Matrix& m, Summation mode) {
  detail::check_apply(t, axis, m);
  const auto [outer, len, inner] = split_at(t.extents(), axis);
  Tensor out(detail::replace_axis(t.extents(), axis, m.rows), 0.0);
  const double* src = t.data().data();
  double* dst = out.data().data();
  std::vector<double> comp(inner);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t r = 0; r < m.rows; ++r) {
      double* row = dst + (o * m.rows + r) * inner;
      if (mode == Summation::plain) {
        for (std::size_t c = 0; c < len; ++c)
          for (std::size_t i = 0; i < inner; ++i) row[i] += m(r, c) * src[(o * len + c) * inner + i];
      } else {
        std::fill(comp.begin(), comp.end(), 0.0);
        for (std::size_t c = 0; c < len; ++c)
          for (std::size_t i = 0; i < inner; ++i)
            neumaier_add(row[i], comp[i], m(r, c) * src[(o * len + c) * inner + i]);
        for (std::size_t i = 0; i < inner; ++i) row[i] += comp[i];
      }
    }
  return out;
}

std::size_t safe_ratio(std::span<const double> num, std::span<const double> den, std::span<double> out) {
  detail::check_same(num.size(), den.size());
  detail::check_same(num.size(), out.size());
  std::size_t bad = 0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (num[i] == 0.0) {
      out[i] = 0.0;
    } else if (den[i] <= 0.0) {
      out[i] = 0.0;
      ++bad;
    } else {
      out[i] = num[i] / den[i];
    }
  }
  return bad;
}

void multiply_inplace(std::span<double> a, std::span<const double> b) {
  detail::check_same(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

}  // namespace nckit::kernels::serial
