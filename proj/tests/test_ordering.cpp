#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nckit/error.hpp"
#include "nckit/ordering.hpp"
#include "nckit/special.hpp"

using namespace nckit;

namespace {

// Moments of a single-mode coherent state with intensity w, s-ordered:
// i! mu^i L_i(-w/mu), mu = (1-s)/2.
double coherent_ordered_moment(int i, double w, double s) {
  const double mu = 0.5 * (1.0 - s);
  const auto L = special::laguerre(i + 1, -w / mu);
  return std::tgamma(i + 1.0) * std::pow(mu, i) * L[static_cast<std::size_t>(i)];
}

double thermal_mm(int i, double mu, double M) {
  return std::exp(std::lgamma(i + M) - std::lgamma(M) - std::lgamma(i + 1.0)) * std::pow(mu, i) *
         std::pow(1.0 + mu, -(i + M));
}

}  // namespace

TEST(Special, FallingFactorialsAndBinomials) {
  EXPECT_EQ(special::falling_factorial(5, 2), 20.0);
  EXPECT_EQ(special::falling_factorial(2, 3), 0.0);
  EXPECT_EQ(special::falling_factorial(7, 0), 1.0);
  EXPECT_EQ(special::binomial(10, 3), 120.0);
  EXPECT_EQ(special::binomial(3, 4), 0.0);
  EXPECT_NEAR(special::log_binomial(10, 3), std::log(120.0), 1e-13);
  EXPECT_EQ(special::falling_factorials(4, 2), (std::vector<double>{0, 0, 2, 6}));
}

TEST(Special, LaguerreMatchesClosedForms) {
  const double x = 0.7;
  const auto L = special::laguerre(4, x);
  EXPECT_DOUBLE_EQ(L[0], 1.0);
  EXPECT_NEAR(L[1], 1.0 - x, 1e-15);
  EXPECT_NEAR(L[2], 0.5 * (x * x - 4 * x + 2), 1e-15);
  EXPECT_NEAR(L[3], (-x * x * x + 9 * x * x - 18 * x + 6) / 6.0, 1e-15);
  EXPECT_EQ(special::laguerre(5, 0.0), std::vector<double>(5, 1.0));
}

TEST(IntensityTransform, IdentityAtNormalOrdering) {
  const std::vector<double> moments{1.0, 2.0, 7.0, 30.0};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(s_transform_W(i, moments, 1.0, 3.0), moments[static_cast<std::size_t>(i)]);
}

TEST(IntensityTransform, FirstMomentAddsThermalNoise) {
  const std::vector<double> moments{1.0, 2.5};
  for (double s : {0.5, 0.0, -0.7})
    for (double M : {1.0, 4.0, 17.5})
      EXPECT_NEAR(s_transform_W(1, moments, s, M), 2.5 + M * (1 - s) / 2, 1e-13);
}

TEST(IntensityTransform, CoherentStateExample) {
  const std::vector<double> moments{1.0, 1.0, 1.0};
  EXPECT_NEAR(s_transform_W(2, moments, 0.0, 1.0), 3.5, 1e-14);
}

TEST(IntensityTransform, CoherentStateLaguerreOracle) {
  for (double w : {0.0, 0.5, 1.0, 5.0})
    for (double s : {-0.5, 0.0, 0.5}) {
      std::vector<double> moments(7);
      for (int i = 0; i <= 6; ++i) moments[static_cast<std::size_t>(i)] = std::pow(w, i);
      for (int i = 0; i <= 6; ++i) {
        const double expect = coherent_ordered_moment(i, w, s);
        EXPECT_NEAR(s_transform_W(i, moments, s, 1.0), expect, 1e-9 * std::abs(expect))
            << "w=" << w << " s=" << s << " i=" << i;
      }
    }
}

TEST(IntensityTransform, LargeOrdersStayFinite) {
  EXPECT_TRUE(std::isfinite(intensity_transform_coefficient(150, 3, -0.9, 1.0)));
  EXPECT_EQ(intensity_transform_coefficient(3, 4, 0.0, 1.0), 0.0);
  EXPECT_THROW(intensity_transform_coefficient(2, 1, 1.5, 1.0), ArgumentError);
  EXPECT_THROW(intensity_transform_coefficient(2, 1, 0.0, 0.0), ArgumentError);
}

TEST(ProbabilityTransform, VacuumBecomesThermal) {
  for (double M : {1.0, 2.0, 7.3})
    for (double s : {0.9, 0.0, -0.5, -0.95}) {
      const double mu = 0.5 * (1.0 - s);
      const std::vector<double> vac{1.0};
      for (int i = 0; i < 30; ++i)
        EXPECT_NEAR(s_transform_p(i, vac, s, M), thermal_mm(i, mu, M), 1e-12) << "M=" << M << " s=" << s;
    }
}

TEST(ProbabilityTransform, DocumentedVacuumValues) {
  const std::vector<double> vac{1.0};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(s_transform_p(i, vac, 0.0, 1.0), (2.0 / 3.0) * std::pow(1.0 / 3.0, i), 1e-15);
  EXPECT_NEAR(s_transform_p(1, vac, 0.0, 2.0), 8.0 / 27.0, 1e-15);
}

TEST(ProbabilityTransform, IdentityAtNormalOrderingAndSingularAtMinusOne) {
  const std::vector<double> p{0.2, 0.5, 0.3};
  for (int i = 0; i < 3; ++i) EXPECT_EQ(s_transform_p(i, p, 1.0, 2.0), p[static_cast<std::size_t>(i)]);
  EXPECT_THROW(s_transform_p(0, p, -1.0, 1.0), ArgumentError);
  EXPECT_THROW(probability_transform_matrix(3, 3, -1.0, 1.0), ArgumentError);
}

TEST(ProbabilityTransform, StableFormMatchesAlternatingSeries) {
  for (double s : {0.6, 0.1, -0.4})
    for (double M : {1.0, 3.0})
      for (int i = 0; i < 8; ++i)
        for (int ip = 0; ip < 8; ++ip) {
          const double a = probability_transform_coefficient(i, ip, s, M);
          const double b = probability_transform_coefficient_alternating(i, ip, s, M);
          // The alternating sum cancels; its error scales with the sum of |terms|.
          const double ratio = 4.0 / ((1.0 + s) * (3.0 - s));
          double magnitude = 0.0;
          for (int l = 0; l <= ip; ++l)
            magnitude += special::binomial(ip, l) * std::exp(special::log_binomial(i + l + M - 1.0, i)) *
                         std::pow(ratio, l);
          magnitude *= std::pow(2.0 / (3.0 - s), M) * std::pow((1.0 + s) / (1.0 - s), ip) *
                       std::pow((1.0 - s) / (3.0 - s), i);
          EXPECT_NEAR(a, b, 1e-14 * magnitude + 1e-15 * std::abs(a)) << i << "," << ip << " s=" << s;
        }
}

TEST(ProbabilityTransform, MatrixRecurrenceMatchesCoefficients) {
  const Matrix m = probability_transform_matrix(60, 40, -0.3, 4.5);
  for (int i = 0; i < 60; i += 7)
    for (int ip = 0; ip < 40; ip += 3) {
      const double c = probability_transform_coefficient(i, ip, -0.3, 4.5);
      EXPECT_NEAR(m(static_cast<std::size_t>(i), static_cast<std::size_t>(ip)), c, 1e-13 + 1e-11 * c);
    }
}

TEST(ProbabilityTransform, EntriesNonnegativeAndColumnsStochastic) {
  const Matrix m = probability_transform_matrix(400, 30, -0.8, 10.0);
  for (std::size_t c = 0; c < m.cols; ++c) {
    double col = 0.0;
    for (std::size_t r = 0; r < m.rows; ++r) {
      ASSERT_GE(m(r, c), 0.0);
      col += m(r, c);
    }
    EXPECT_NEAR(col, 1.0, 1e-12) << "column " << c;
  }
}

TEST(ProbabilityTransform, FactorialMomentsMatchIntensityTransform) {
  // Factorial moments of p_s must equal the s-ordered intensity moments.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> p(6);
    double sum = 0.0;
    for (double& x : p) sum += (x = u(rng));
    for (double& x : p) x /= sum;
    const double s = 0.8 - 1.2 * u(rng), M = 0.5 + 3.0 * u(rng);
    const Matrix S = probability_transform_matrix(400, 6, s, M);
    for (int k = 0; k <= 4; ++k) {
      std::vector<double> moments(static_cast<std::size_t>(k) + 1);
      for (int j = 0; j <= k; ++j)
        for (int n = 0; n < 6; ++n) moments[static_cast<std::size_t>(j)] += special::falling_factorial(n, j) * p[static_cast<std::size_t>(n)];
      double from_ps = 0.0;
      for (std::size_t r = 0; r < S.rows; ++r) {
        double ps = 0.0;
        for (std::size_t c = 0; c < 6; ++c) ps += S(r, c) * p[c];
        from_ps += special::falling_factorial(static_cast<int>(r), k) * ps;
      }
      const double expect = s_transform_W(k, moments, s, M);
      EXPECT_NEAR(from_ps, expect, 1e-10 * std::abs(expect)) << "k=" << k << " s=" << s << " M=" << M;
    }
  }
}

TEST(OrderedWeights, ReproduceIntensityTransform) {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.25, 0.15};
  for (int order = 0; order <= 4; ++order) {
    const auto w = ordered_moment_weights(order, 5, -0.2, 2.5);
    double via_w = 0.0;
    for (int n = 0; n < 5; ++n) via_w += w[static_cast<std::size_t>(n)] * p[static_cast<std::size_t>(n)];
    std::vector<double> moments(static_cast<std::size_t>(order) + 1);
    for (int j = 0; j <= order; ++j)
      for (int n = 0; n < 5; ++n) moments[static_cast<std::size_t>(j)] += special::falling_factorial(n, j) * p[static_cast<std::size_t>(n)];
    EXPECT_NEAR(via_w, s_transform_W(order, moments, -0.2, 2.5), 1e-12);
  }
}
