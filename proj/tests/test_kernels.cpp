#include <gtest/gtest.h>

#include <random>

#include "nckit/error.hpp"
#include "nckit/kernels.hpp"
#include "nckit/parallel.hpp"

using namespace nckit;

namespace {

Tensor random_tensor(const MultiIndex& ext, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor t(ext, 0.0);
  for (double& x : t.data()) x = u(rng);
  return t;
}

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (double& x : m.data) x = u(rng);
  return m;
}

void expect_bit_equal(const Tensor& a, const Tensor& b) {
  ASSERT_EQ(a.extents(), b.extents());
  for (std::size_t k = 0; k < a.size(); ++k) ASSERT_EQ(a[k], b[k]) << "entry " << k;
}

class KernelEquivalence : public ::testing::TestWithParam<Summation> {
 protected:
  void SetUp() override { set_thread_count(4); }
  void TearDown() override { set_thread_count(0); }
};

}  // namespace

TEST_P(KernelEquivalence, ReduceAxisSerialEqualsOpenMP) {
  const Tensor t = random_tensor(MultiIndex{40, 37, 29}, 1);
  for (std::size_t axis = 0; axis < 3; ++axis) {
    std::vector<double> w(static_cast<std::size_t>(t.extent(axis)));
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = 1.0 / (1.0 + static_cast<double>(k));
    expect_bit_equal(kernels::serial::reduce_axis(t, axis, w, GetParam()),
                     kernels::omp::reduce_axis(t, axis, w, GetParam()));
  }
}

TEST_P(KernelEquivalence, ApplyAxisSerialEqualsOpenMP) {
  const Tensor t = random_tensor(MultiIndex{33, 41, 27}, 2);
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const Matrix m = random_matrix(50, static_cast<std::size_t>(t.extent(axis)), 3 + axis);
    expect_bit_equal(kernels::serial::apply_axis(t, axis, m, GetParam()),
                     kernels::omp::apply_axis(t, axis, m, GetParam()));
  }
}

INSTANTIATE_TEST_SUITE_P(Modes, KernelEquivalence, ::testing::Values(Summation::plain, Summation::compensated));

TEST(Kernels, ElementwiseSerialEqualsOpenMP) {
  set_thread_count(4);
  const Tensor a = random_tensor(MultiIndex{1 << 15}, 4);
  Tensor b = random_tensor(MultiIndex{1 << 15}, 5);
  b[7] = 0.0;
  Tensor num = a;
  num[7] = 1.0;
  std::vector<double> r1(a.size()), r2(a.size());
  EXPECT_EQ(kernels::serial::safe_ratio(num.data(), b.data(), r1), kernels::omp::safe_ratio(num.data(), b.data(), r2));
  EXPECT_EQ(r1, r2);
  Tensor x = a, y = a;
  kernels::serial::multiply_inplace(x.data(), b.data());
  kernels::omp::multiply_inplace(y.data(), b.data());
  expect_bit_equal(x, y);
  set_thread_count(0);
}

TEST(Kernels, ApplyAxisMatchesDefinition) {
  const Tensor t(MultiIndex{2, 3}, std::vector<double>{1, 2, 3, 4, 5, 6});
  Matrix m(2, 3);
  m.data = {1, 0, 1, 0, 1, 0};
  const Tensor out = kernels::apply_axis(t, 1, m, Summation::plain);
  EXPECT_EQ(out.extents(), (MultiIndex{2, 2}));
  EXPECT_EQ(out.storage(), (std::vector<double>{4, 2, 10, 5}));
  Matrix bad(2, 4);
  EXPECT_THROW(kernels::apply_axis(t, 1, bad, Summation::plain), ArgumentError);
}

TEST(Kernels, SafeRatioFlagsUnsupportedEntries) {
  const std::vector<double> num{0.0, 1.0, 2.0}, den{0.0, 0.0, 4.0};
  std::vector<double> out(3);
  EXPECT_EQ(kernels::safe_ratio(num, den, out), 1u);
  EXPECT_EQ(out, (std::vector<double>{0.0, 0.0, 0.5}));
}

TEST(Kernels, ContractionsAgree) {
  const Tensor t = random_tensor(MultiIndex{5, 6, 7}, 6);
  std::vector<std::vector<double>> w{{1, 2, 3, 4, 5}, {}, {1, 0, 1, 0, 1, 0, 1}};
  double direct = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const MultiIndex n = t.index_of(k);
    direct += t[k] * w[0][static_cast<std::size_t>(n[0])] * w[2][static_cast<std::size_t>(n[2])];
  }
  EXPECT_NEAR(kernels::contract(t, w), direct, 1e-12);
  EXPECT_NEAR(kernels::contract(t, w, Summation::compensated), direct, 1e-12);
  const Tensor partial = kernels::contract_partial(t, {w[0], std::nullopt, w[2]});
  ASSERT_EQ(partial.extents(), (MultiIndex{6}));
  EXPECT_NEAR(partial.sum(), direct, 1e-12);
  EXPECT_NEAR(kernels::contract_axis_scalar(t, 0, w[0]), kernels::contract(t, {w[0], {}, {}}), 1e-12);
  EXPECT_NEAR(kernels::sum_axis(t, 1).sum(), t.sum(), 1e-12);
}

TEST(Kernels, CompensatedSummationRecoversCancellation) {
  const Tensor t(MultiIndex{4}, std::vector<double>{1e16, 1.0, -1e16, 1.0});
  const std::vector<double> ones(4, 1.0);
  EXPECT_EQ(kernels::reduce_axis(t, 0, ones, Summation::compensated)[0], 2.0);
}

TEST(Parallel, BackendSwitch) {
  {
    ScopedBackend guard(Backend::serial);
    EXPECT_EQ(backend(), Backend::serial);
  }
  EXPECT_EQ(backend(), Backend::openmp);
  set_thread_count(3);
  EXPECT_EQ(thread_count(), 3);
  set_thread_count(0);
}
