#include "nckit/special.hpp"

#include <cmath>

#include "nckit/error.hpp"

namespace nckit::special {

double falling_factorial(int n, int k) {
  if (k < 0) throw ArgumentError("falling factorial order must be nonnegative");
  if (k > n) return 0.0;
  double acc = 1.0;
  for (int t = 0; t < k; ++t) acc *= static_cast<double>(n - t);
  return acc;
}

std::vector<double> falling_factorials(int count, int k) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) out[static_cast<std::size_t>(n)] = falling_factorial(n, k);
  return out;
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (int t = 1; t <= k; ++t) acc = acc * static_cast<double>(n - k + t) / t;
  return std::round(acc);
}

std::vector<double> laguerre(int count, double x) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  if (count > 0) out[0] = 1.0;
  if (count > 1) out[1] = 1.0 - x;
  for (int n = 1; n + 1 < count; ++n) {
    const auto k = static_cast<std::size_t>(n);
    out[k + 1] = ((2.0 * n + 1.0 - x) * out[k] - n * out[k - 1]) / (n + 1.0);
  }
  return out;
}

}  // namespace nckit::special
