#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "nckit/detection.hpp"
#include "nckit/error.hpp"
#include "nckit/special.hpp"

using namespace nckit;

namespace {

double binom_pmf(int n, int c, double eta) {
  return special::binomial(n, c) * std::pow(eta, c) * std::pow(1.0 - eta, n - c);
}

// Renormalized to the stored box, as EM estimates are.
PhotonNumberDistribution one_dim(std::vector<double> v) {
  double mass = 0.0;
  for (double x : v) mass += x;
  for (double& x : v) x /= mass;
  return PhotonNumberDistribution(Tensor(MultiIndex{static_cast<int>(v.size())}, v));
}

}  // namespace

TEST(DetectionMatrix, IdealDetectorIsIdentity) {
  const Matrix m = detection_matrix({}, 6);
  ASSERT_EQ(m.rows, 6u);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(m(r, c), r == c ? 1.0 : 0.0);
}

TEST(DetectionMatrix, LossIsBinomial) {
  const Matrix m = detection_matrix({0.5, 0.0, std::nullopt}, 10);
  for (int n = 0; n < 10; ++n)
    for (int c = 0; c < 10; ++c)
      EXPECT_NEAR(m(static_cast<std::size_t>(c), static_cast<std::size_t>(n)), c <= n ? binom_pmf(n, c, 0.5) : 0.0,
                  1e-15);
}

TEST(DetectionMatrix, ColumnsAreStochasticWithDarkCounts) {
  const Matrix m = detection_matrix({0.6, 0.1, std::nullopt}, 12);
  EXPECT_GT(m.rows, 12u);
  for (std::size_t n = 0; n < m.cols; ++n) {
    double col = 0.0;
    for (std::size_t c = 0; c < m.rows; ++c) {
      EXPECT_GE(m(c, n), 0.0);
      col += m(c, n);
    }
    EXPECT_NEAR(col, 1.0, 1e-14);
  }
  // Vacuum column is the dark-count Poisson law.
  for (std::size_t c = 0; c + 1 < m.rows; ++c)
    EXPECT_NEAR(m(c, 0), std::exp(-0.1) * std::pow(0.1, static_cast<double>(c)) / std::tgamma(c + 1.0), 1e-16);
}

TEST(DetectionMatrix, SaturationClipsLargeCounts) {
  const Matrix m = detection_matrix({1.0, 0.0, 3}, 8);
  ASSERT_EQ(m.rows, 4u);
  for (std::size_t n = 0; n < 8; ++n) EXPECT_EQ(m(std::min<std::size_t>(n, 3), n), 1.0);
}

TEST(DetectionMatrix, RejectsBadParameters) {
  EXPECT_THROW(detection_matrix({1.5, 0.0, std::nullopt}, 4), ArgumentError);
  EXPECT_THROW(detection_matrix({0.5, -0.1, std::nullopt}, 4), ArgumentError);
  EXPECT_THROW(detection_matrix({0.5, 0.0, -1}, 4), ArgumentError);
  EXPECT_THROW(detection_matrix({}, 0), ArgumentError);
  EXPECT_THROW(DetectionModel({{}, {}}, MultiIndex{3}), ArgumentError);
}

TEST(Forward, MeansScaleWithEfficiency) {
  const PhotonNumberDistribution p(fixtures::outer({fixtures::thermal(2.0, 80), fixtures::poisson_values(3.0, 40)}));
  const auto model = build_detection({{0.7, 0.0, std::nullopt}, {0.4, 0.2, std::nullopt}}, p.cutoffs());
  const auto f = forward(p, model).as_distribution();
  EXPECT_NEAR(f.mean(0), 0.7 * p.mean(0), 1e-9);
  EXPECT_NEAR(f.mean(1), 0.4 * p.mean(1) + 0.2, 1e-9);
  EXPECT_NEAR(f.stored_mass(), 1.0, 1e-14);
  EXPECT_THROW(forward(one_dim({1.0}), model), ArgumentError);
}

TEST(Em, LikelihoodNeverDecreases) {
  const PhotonNumberDistribution p(fixtures::outer({fixtures::thermal(1.5, 20), fixtures::poisson_values(2.0, 20)}));
  const auto model = build_detection({{0.6, 0.1, std::nullopt}, {0.8, 0.0, std::nullopt}}, p.cutoffs());
  const auto f = forward(p, model);
  EmOptions opts;
  opts.max_iter = 300;
  const auto r = em_reconstruct(f, model, opts);
  ASSERT_GE(r.likelihood_trace.size(), 2u);
  for (std::size_t k = 1; k < r.likelihood_trace.size(); ++k)
    EXPECT_GE(r.likelihood_trace[k], r.likelihood_trace[k - 1] - 1e-13) << k;
  EXPECT_NEAR(r.p.stored_mass(), 1.0, 1e-12);
  for (double x : r.p.data()) EXPECT_GE(x, 0.0);
}

TEST(Em, EachIterateStaysNormalized) {
  const auto p = one_dim(fixtures::thermal(1.0, 15));
  const auto model = build_detection({{0.5, 0.05, std::nullopt}}, p.cutoffs());
  const auto f = forward(p, model);
  EmOptions opts;
  for (long it = 1; it <= 5; ++it) {
    opts.max_iter = it;
    const auto r = em_reconstruct(f, model, opts);
    EXPECT_EQ(r.iterations, it);
    EXPECT_NEAR(r.p.stored_mass(), 1.0, 1e-13);
  }
}

TEST(Em, TrueFieldIsFixedPoint) {
  const auto p = one_dim(fixtures::poisson_values(2.5, 15));
  const auto model = build_detection({{0.7, 0.0, std::nullopt}}, p.cutoffs());
  EmOptions opts;
  opts.init = p.table();
  opts.max_iter = 1;
  const auto r = em_reconstruct(forward(p, model), model, opts);
  EXPECT_LT(total_variation(r.p.table(), p.table()), 1e-13);
}

TEST(Em, RecoversExactDataWithIdealDetector) {
  const auto p = one_dim(fixtures::thermal(1.2, 15));
  const auto model = build_detection({{}}, p.cutoffs());
  PhotocountHistogram f(p.table(), 1000);
  const auto r = em_reconstruct(f, model);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(total_variation(r.p.table(), p.table()), 1e-6);
}

TEST(Em, ReportsColumnDeficitOnTruncatedHistogram) {
  const auto p = one_dim(fixtures::thermal(1.0, 10));
  const auto model = build_detection({{0.9, 0.3, std::nullopt}}, p.cutoffs());
  const auto full = forward(p, model);
  Tensor cut(MultiIndex{10});
  for (int c = 0; c < 10; ++c) cut[static_cast<std::size_t>(c)] = full.table()[static_cast<std::size_t>(c)];
  EmOptions opts;
  opts.max_iter = 50;
  const auto r = em_reconstruct(PhotocountHistogram(cut, std::nullopt), model, opts);
  EXPECT_GT(r.column_deficit, 0.0);
  EXPECT_NEAR(r.p.stored_mass(), 1.0, 1e-12);
}

TEST(Em, ZeroPredictedProbabilityIsAnError) {
  const auto model = build_detection({{0.0, 0.0, std::nullopt}}, MultiIndex{3});
  const PhotocountHistogram f(Tensor(MultiIndex{3}, std::vector<double>{0.5, 0.5, 0.0}), 10);
  EXPECT_THROW(em_reconstruct(f, model), ModelSupportError);
}

TEST(Em, ArgumentChecks) {
  const auto model = build_detection({{}}, MultiIndex{3});
  const PhotocountHistogram f(Tensor(MultiIndex{3}, std::vector<double>{0.5, 0.5, 0.0}), 10);
  EmOptions bad;
  bad.tol = 0.0;
  EXPECT_THROW(em_reconstruct(f, model, bad), ArgumentError);
  bad = {};
  bad.init = Tensor(MultiIndex{4}, 1.0);
  EXPECT_THROW(em_reconstruct(f, model, bad), ArgumentError);
  EXPECT_THROW(em_reconstruct(PhotocountHistogram(Tensor(MultiIndex{3}, 0.0), 10), model), DegenerateInputError);
}

TEST(Bootstrap, ReplicatesAreDeterministicAndIndependentOfThreads) {
  const PhotocountHistogram f(fixtures::outer({fixtures::thermal(1.0, 12), fixtures::poisson_values(1.0, 10)}), 5000);
  const auto a = bootstrap_resample(f, 6, 77);
  const auto b = bootstrap_resample(f, 6, 77);
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t r = 0; r < a.size(); ++r) {
    EXPECT_EQ(a[r].table().storage(), b[r].table().storage());
    EXPECT_EQ(a[r].table().storage(), bootstrap_replicate(f, static_cast<int>(r), 77).table().storage());
    EXPECT_EQ(a[r].total_counts(), 5000);
    EXPECT_NEAR(a[r].table().sum(), 1.0, 1e-12);
  }
  EXPECT_NE(a[0].table().storage(), a[1].table().storage());
  EXPECT_NE(a[0].table().storage(), bootstrap_resample(f, 1, 78)[0].table().storage());
}

TEST(Bootstrap, EdgeCases) {
  const PhotocountHistogram f(Tensor(MultiIndex{2}, std::vector<double>{0.5, 0.5}), 10);
  EXPECT_TRUE(bootstrap_resample(f, 0, 1).empty());
  EXPECT_THROW(bootstrap_resample(f, -1, 1), ArgumentError);
  const PhotocountHistogram no_counts(Tensor(MultiIndex{2}, std::vector<double>{0.5, 0.5}), std::nullopt);
  EXPECT_THROW(bootstrap_resample(no_counts, 2, 1), ArgumentError);
}
