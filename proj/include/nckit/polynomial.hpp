#pragma once

#include <map>
#include <vector>

#include "nckit/multi_index.hpp"

namespace nckit {

/// Polynomial in the intensities W_1..W_N: exponent vector -> coefficient.
using Polynomial = std::map<MultiIndex, double>;

Polynomial monomial(const MultiIndex& exponents, double coefficient = 1.0);
/// sum_j c_j W_j
Polynomial linear_form(const std::vector<double>& coefficients);
Polynomial multiply(const Polynomial& a, const Polynomial& b);
Polynomial power(const Polynomial& a, int k);
Polynomial add(const Polynomial& a, const Polynomial& b);
/// Removes exactly cancelled monomials.
Polynomial prune(Polynomial p);

}  // namespace nckit
