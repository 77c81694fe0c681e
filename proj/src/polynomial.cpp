#include "nckit/polynomial.hpp"

#include "nckit/error.hpp"

namespace nckit {

Polynomial monomial(const MultiIndex& exponents, double coefficient) { return {{exponents, coefficient}}; }

Polynomial linear_form(const std::vector<double>& coefficients) {
  Polynomial p;
  for (std::size_t j = 0; j < coefficients.size(); ++j)
    if (coefficients[j] != 0.0) p[MultiIndex::unit(coefficients.size(), j)] = coefficients[j];
  return p;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
  return prune(std::move(out));
}

Polynomial power(const Polynomial& a, int k) {
  if (k < 0) throw ArgumentError("polynomial power must be nonnegative");
  if (a.empty()) throw ArgumentError("power of an empty polynomial");
  Polynomial out = monomial(MultiIndex(a.begin()->first.size()));
  for (int t = 0; t < k; ++t) out = multiply(out, a);
  return out;
}

Polynomial add(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [e, c] : b) out[e] += c;
  return prune(std::move(out));
}

Polynomial prune(Polynomial p) {
  std::erase_if(p, [](const auto& kv) { return kv.second == 0.0; });
  return p;
}

}  // namespace nckit
