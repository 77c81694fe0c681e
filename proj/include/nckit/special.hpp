#pragma once

#include <vector>

namespace nckit::special {

/// n (n-1) ... (n-k+1) as a double; zero when k > n.
double falling_factorial(int n, int k);

/// falling_factorial(n, k) for n = 0..count-1.
std::vector<double> falling_factorials(int count, int k);

double log_binomial(double n, double k);
double binomial(int n, int k);

/// Standard Laguerre polynomials L_0(x)..L_{count-1}(x) by the three-term
/// recurrence; L_n(0) = 1.
std::vector<double> laguerre(int count, double x);

}  // namespace nckit::special
