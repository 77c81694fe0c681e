#include <omp.h>

#include <vector>

#include "kernels_common.hpp"

namespace nckit::kernels::omp {

using detail::neumaier_add;

namespace {

constexpr std::size_t kBlock = 256;
constexpr std::size_t kMinWork = 1 << 14;

}  // namespace

Tensor reduce_axis(const Tensor& t, std::size_t axis, std::span<const double> w, Summation mode) {
  detail::check_reduce(t, axis, w.size());
  const auto [outer, len, inner] = split_at(t.extents(), axis);
  Tensor out(detail::drop_axis(t.extents(), axis), 0.0);
  const double* src = t.data().data();
  double* dst = out.data().data();
  const std::size_t blocks = (inner + kBlock - 1) / kBlock;
  const long long tasks = static_cast<long long>(outer * blocks);
  const bool compensated = mode == Summation::compensated;

#pragma omp parallel for schedule(static) if (t.size() >= kMinWork)
  for (long long task = 0; task < tasks; ++task) {
    const std::size_t o = static_cast<std::size_t>(task) / blocks;
    const std::size_t b0 = (static_cast<std::size_t>(task) % blocks) * kBlock;
    const std::size_t b1 = std::min(inner, b0 + kBlock);
    double* row = dst + o * inner;
    if (!compensated) {
      for (std::size_t k = 0; k < len; ++k)
        for (std::size_t i = b0; i < b1; ++i) row[i] += src[(o * len + k) * inner + i] * w[k];
    } else {
      double comp[kBlock] = {};
      for (std::size_t k = 0; k < len; ++k)
        for (std::size_t i = b0; i < b1; ++i)
          neumaier_add(row[i], comp[i - b0], src[(o * len + k) * inner + i] * w[k]);
      for (std::size_t i = b0; i < b1; ++i) row[i] += comp[i - b0];
    }
  }
  return out;
}

Tensor apply_axis(const Tensor& t, std::size_t axis, const Matrix& m, Summation mode) {
  detail::check_apply(t, axis, m);
  const auto [outer, len, inner] = split_at(t.extents(), axis);
  Tensor out(detail::replace_axis(t.extents(), axis, m.rows), 0.0);
  const double* src = t.data().data();
  double* dst = out.data().data();
  const long long tasks = static_cast<long long>(outer * m.rows);
  const bool compensated = mode == Summation::compensated;

#pragma omp parallel if (out.size() * len >= kMinWork)
  {
    std::vector<double> comp(compensated ? inner : 0);
#pragma omp for schedule(static)
    for (long long task = 0; task < tasks; ++task) {
      const std::size_t o = static_cast<std::size_t>(task) / m.rows;
      const std::size_t r = static_cast<std::size_t>(task) % m.rows;
      double* row = dst + (o * m.rows + r) * inner;
      if (!compensated) {
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
  }
  return out;
}

std::size_t safe_ratio(std::span<const double> num, std::span<const double> den, std::span<double> out) {
  detail::check_same(num.size(), den.size());
  detail::check_same(num.size(), out.size());
  const long long n = static_cast<long long>(num.size());
  long long bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad) if (num.size() >= kMinWork)
  for (long long i = 0; i < n; ++i) {
    if (num[i] == 0.0) {
      out[i] = 0.0;
    } else if (den[i] <= 0.0) {
      out[i] = 0.0;
      ++bad;
    } else {
      out[i] = num[i] / den[i];
    }
  }
  return static_cast<std::size_t>(bad);
}

void multiply_inplace(std::span<double> a, std::span<const double> b) {
  detail::check_same(a.size(), b.size());
  const long long n = static_cast<long long>(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kMinWork)
  for (long long i = 0; i < n; ++i) a[i] *= b[i];
}

}  // namespace nckit::kernels::omp
