#include "nckit/ordering.hpp"

#include <cmath>

#include "nckit/error.hpp"
#include "nckit/special.hpp"

namespace nckit {
namespace {

void check_modes(double modes) {
  if (!(modes > 0.0) || !std::isfinite(modes)) throw ArgumentError("mode number must be positive");
}

void check_probability_s(double s) {
  if (!(s > -1.0 && s <= 1.0))
    throw ArgumentError("probability transform requires -1 < s <= 1");
}

}  // namespace

double intensity_transform_coefficient(int i, int iprime, double s, double modes) {
  check_modes(modes);
  if (!(s <= 1.0)) throw ArgumentError("ordering parameter must not exceed 1");
  if (iprime < 0 || iprime > i) return 0.0;
  const double mu = 0.5 * (1.0 - s);
  return special::binomial(i, iprime) *
         std::exp(std::lgamma(i + modes) - std::lgamma(iprime + modes)) * std::pow(mu, i - iprime);
}

double probability_transform_coefficient(int i, int iprime, double s, double modes) {
  check_modes(modes);
  check_probability_s(s);
  if (i < 0 || iprime < 0) return 0.0;
  if (s == 1.0) return i == iprime ? 1.0 : 0.0;
  // [x^i] (mu + (1-mu) x)^i' / (1 + mu - mu x)^(i'+M)
  const double mu = 0.5 * (1.0 - s);
  const double r = iprime + modes;
  const double log_q = std::log(mu) - std::log1p(mu);
  double acc = 0.0;
  for (int k = 0; k <= std::min(i, iprime); ++k) {
    const int j = i - k;
    double log_term = special::log_binomial(iprime, k) + std::lgamma(j + r) - std::lgamma(j + 1.0) -
                      std::lgamma(r) - r * std::log1p(mu) + j * log_q;
    if (iprime - k > 0) log_term += (iprime - k) * std::log(mu);
    if (k > 0) log_term += k * std::log1p(-mu);
    acc += std::exp(log_term);
  }
  return acc;
}

double probability_transform_coefficient_alternating(int i, int iprime, double s, double modes) {
  check_modes(modes);
  check_probability_s(s);
  if (s == 1.0) return i == iprime ? 1.0 : 0.0;
  const double pre = std::pow(2.0 / (3.0 - s), modes) * std::pow((1.0 + s) / (1.0 - s), iprime) *
                     std::pow((1.0 - s) / (3.0 - s), i);
  const double ratio = 4.0 / ((1.0 + s) * (3.0 - s));
  double acc = 0.0;
  for (int l = 0; l <= iprime; ++l) {
    const double sign = ((iprime - l) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * special::binomial(iprime, l) *
           std::exp(special::log_binomial(i + l + modes - 1.0, i)) * std::pow(ratio, l);
  }
  return pre * acc;
}

Matrix probability_transform_matrix(int rows, int cols, double s, double modes) {
  check_modes(modes);
  check_probability_s(s);
  if (rows <= 0 || cols <= 0) throw ArgumentError("transform matrix needs positive size");
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  if (s == 1.0) {
    for (int k = 0; k < std::min(rows, cols); ++k) m(k, k) = 1.0;
    return m;
  }
  const double mu = 0.5 * (1.0 - s);
  const double q = mu / (1.0 + mu);
  const auto R = static_cast<std::size_t>(rows);

  // Column 0: M-mode thermal with mean mu per mode, from log space so that
  // large M underflows gracefully.
  std::vector<double> col(R), next(R);
  double log_h = -modes * std::log1p(mu);
  const double log_q = std::log(q);
  for (std::size_t n = 0; n < R; ++n) {
    if (n > 0) log_h += log_q + std::log((n - 1.0 + modes) / static_cast<double>(n));
    col[n] = std::exp(log_h);
  }
  // Column i'+1 = column i' times (mu + (1-mu) x) / (1 + mu - mu x).
  for (std::size_t c = 0;; ++c) {
    for (std::size_t n = 0; n < R; ++n) m(n, c) = col[n];
    if (c + 1 == static_cast<std::size_t>(cols)) break;
    double carry = 0.0;
    for (std::size_t n = 0; n < R; ++n) {
      carry = col[n] / (1.0 + mu) + q * carry;
      next[n] = carry;
    }
    for (std::size_t n = R; n-- > 0;)
      next[n] = mu * next[n] + (n > 0 ? (1.0 - mu) * next[n - 1] : 0.0);
    col.swap(next);
  }
  return m;
}

std::vector<double> ordered_moment_weights(int order, int count, double s, double modes) {
  if (order < 0) throw ArgumentError("moment order must be nonnegative");
  std::vector<double> w(static_cast<std::size_t>(count), 0.0);
  for (int ip = 0; ip <= order; ++ip) {
    const double c = intensity_transform_coefficient(order, ip, s, modes);
    if (c == 0.0) continue;
    for (int n = ip; n < count; ++n)
      w[static_cast<std::size_t>(n)] += c * special::falling_factorial(n, ip);
  }
  return w;
}

double s_transform_W(int order, std::span<const double> moments, double s, double modes) {
  if (moments.size() < static_cast<std::size_t>(order) + 1)
    throw ArgumentError("need moments of orders 0..i");
  double acc = 0.0;
  for (int ip = 0; ip <= order; ++ip)
    acc += intensity_transform_coefficient(order, ip, s, modes) * moments[static_cast<std::size_t>(ip)];
  return acc;
}

double s_transform_p(int index, std::span<const double> probs, double s, double modes) {
  if (index < 0) throw ArgumentError("probability index must be nonnegative");
  if (s == 1.0) return static_cast<std::size_t>(index) < probs.size() ? probs[static_cast<std::size_t>(index)] : 0.0;
  double acc = 0.0;
  for (std::size_t ip = 0; ip < probs.size(); ++ip)
    acc += probability_transform_coefficient(index, static_cast<int>(ip), s, modes) * probs[ip];
  return acc;
}

}  // namespace nckit
