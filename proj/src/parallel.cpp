#include "nckit/parallel.hpp"

#include <omp.h>

#include <atomic>

#include "nckit/error.hpp"
#include "nckit/kernels.hpp"

namespace nckit {
namespace {

std::atomic<Backend> g_backend{Backend::openmp};
std::atomic<int> g_threads{0};
const int g_default_threads = omp_get_max_threads();

bool use_omp() { return g_backend.load() == Backend::openmp && thread_count() > 1; }

}  // namespace

Backend backend() { return g_backend.load(); }
void set_backend(Backend b) { g_backend.store(b); }

void set_thread_count(int n) {
  if (n < 0) throw ArgumentError("thread count must be nonnegative");
  g_threads.store(n);
  omp_set_num_threads(n == 0 ? g_default_threads : n);
}

int thread_count() {
  const int n = g_threads.load();
  return n == 0 ? g_default_threads : n;
}

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace kernels {

Tensor reduce_axis(const Tensor& t, std::size_t axis, std::span<const double> w, Summation mode) {
  return use_omp() ? omp::reduce_axis(t, axis, w, mode) : serial::reduce_axis(t, axis, w, mode);
}

Tensor apply_axis(const Tensor& t, std::size_t axis, const Matrix& m, Summation mode) {
  return use_omp() ? omp::apply_axis(t, axis, m, mode) : serial::apply_axis(t, axis, m, mode);
}

std::size_t safe_ratio(std::span<const double> num, std::span<const double> den, std::span<double> out) {
  return use_omp() ? omp::safe_ratio(num, den, out) : serial::safe_ratio(num, den, out);
}

void multiply_inplace(std::span<double> a, std::span<const double> b) {
  use_omp() ? omp::multiply_inplace(a, b) : serial::multiply_inplace(a, b);
}

Tensor sum_axis(const Tensor& t, std::size_t axis) {
  if (axis >= t.rank()) throw ArgumentError("axis out of range");
  const std::vector<double> ones(static_cast<std::size_t>(t.extent(axis)), 1.0);
  return reduce_axis(t, axis, ones, Summation::plain);
}

Tensor contract_partial(const Tensor& t, const std::vector<std::optional<std::vector<double>>>& weights,
                        Summation mode) {
  if (weights.size() != t.rank()) throw ArgumentError("one weight slot per axis required");
  Tensor cur = t;
  // Last axis first keeps the contiguous dimension hot.
  for (std::size_t a = t.rank(); a-- > 0;) {
    if (!weights[a]) continue;
    cur = reduce_axis(cur, a, *weights[a], mode);
  }
  return cur;
}

double contract(const Tensor& t, const std::vector<std::vector<double>>& weights, Summation mode) {
  if (weights.size() != t.rank()) throw ArgumentError("one weight vector per axis required");
  std::vector<std::optional<std::vector<double>>> w(t.rank());
  for (std::size_t a = 0; a < t.rank(); ++a)
    w[a] = weights[a].empty() ? std::vector<double>(static_cast<std::size_t>(t.extent(a)), 1.0) : weights[a];
  return contract_partial(t, w, mode)[0];
}

double contract_axis_scalar(const Tensor& t, int axis, std::span<const double> w) {
  std::vector<std::vector<double>> weights(t.rank());
  weights.at(static_cast<std::size_t>(axis)).assign(w.begin(), w.end());
  return contract(t, weights);
}

}  // namespace kernels
}  // namespace nckit
