#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "helpers.hpp"
#include "nckit/diagnostics.hpp"
#include "nckit/error.hpp"
#include "nckit/moments.hpp"
#include "nckit/ordering.hpp"

using namespace nckit;
using fixtures::outer;

TEST(FactorialMoment, PoissonPowers) {
  const auto p = poisson(2.0, 80);
  EXPECT_NEAR(factorial_moment(p, MultiIndex{3}), 8.0, 1e-12);
}

TEST(FactorialMoment, SinglePhotonVanishesAtSecondOrder) {
  const PhotonNumberDistribution p(Tensor(MultiIndex{3}, std::vector<double>{0, 1, 0}));
  EXPECT_EQ(factorial_moment(p, MultiIndex{2}), 0.0);
}

TEST(FactorialMoment, ThermalBruteForce) {
  const auto p = mandel_rice(1.0, 1.0, 200);
  double direct = 0.0;
  for (int n = 0; n < 200; ++n) direct += n * (n - 1.0) * p.at(MultiIndex{n});
  EXPECT_NEAR(factorial_moment(p, MultiIndex{2}), direct, 1e-12);
  EXPECT_NEAR(factorial_moment(p, MultiIndex{2}), 2.0, 1e-10);
}

TEST(FactorialMoment, ShapeMismatch) {
  EXPECT_THROW(factorial_moment(poisson(1.0, 10), MultiIndex{1, 1}), ArgumentError);
}

TEST(MixedMoment, PureProbabilityIsMarginal) {
  const PhotonNumberDistribution p(outer({{0.3, 0.7}, {0.1, 0.6, 0.3}}));
  EXPECT_NEAR(mixed_moment(p, MomentAtom(MultiIndex{0, 1}, 0b10)), 0.6, 1e-15);
  EXPECT_NEAR(mixed_moment(p, MomentAtom::probability(MultiIndex{1, 2})), 0.21, 1e-15);
}

TEST(MixedMoment, DeltaField) {
  const PhotonNumberDistribution p(outer({fixtures::delta(1, 3), fixtures::delta(1, 3)}));
  EXPECT_DOUBLE_EQ(mixed_moment(p, MomentAtom(MultiIndex{1, 1}, 0b10)), 1.0);
}

TEST(MixedMoment, TwinBeamConditionedOnVacuum) {
  const auto p = fixtures::twin_beam(1.0, 1.0, 60);
  EXPECT_EQ(mixed_moment(p, MomentAtom(MultiIndex{1, 0}, 0b10)), 0.0);
}

TEST(MixedMoment, OutsideCutoffFlagsAndWarns) {
  const PhotonNumberDistribution p(outer({{0.5, 0.5}, {0.5, 0.5}}));
  ScopedWarningCapture cap;
  const MomentTable table(p, ModeSpec::uniform(2, 1.0));
  const auto v = table.get(MomentAtom(MultiIndex{1, 5}, 0b10));
  EXPECT_TRUE(v.outside_cutoff);
  EXPECT_EQ(v.value, 0.0);
  EXPECT_EQ(cap.count(), 1);
  EXPECT_EQ(mixed_moment(p, MomentAtom(MultiIndex{1, 5}, 0b10)), 0.0);
}

TEST(MomentAtom, LabelsAndValidation) {
  EXPECT_EQ(MomentAtom::intensity(MultiIndex{1, 2, 0}).label(), "W^{120}");
  EXPECT_EQ(MomentAtom::probability(MultiIndex{1, 2, 0}).label(), "p(120)");
  EXPECT_EQ(MomentAtom(MultiIndex{1, 2, 3}, 0b100).label(), "W^{1,2,.}p(.,.,3)");
  EXPECT_THROW(MomentAtom(MultiIndex{1, -1}, 0), ArgumentError);
  EXPECT_THROW(MomentAtom(MultiIndex{1, 1}, 0b100), ArgumentError);
}

TEST(OrderedMoment, NormalOrderingIsIdentity) {
  const PhotonNumberDistribution p(outer({fixtures::poisson_values(0.8, 30), fixtures::thermal(0.5, 40)}));
  const ModeSpec modes({2.0, 3.0});
  for (const auto& atom : {MomentAtom(MultiIndex{2, 1}, 0), MomentAtom(MultiIndex{2, 3}, 0b10),
                           MomentAtom::probability(MultiIndex{1, 1})})
    EXPECT_EQ(s_ordered_mixed_moment(p, modes, atom, 1.0).value, mixed_moment(p, atom));
}

TEST(OrderedMoment, OneDimensionalIntensityMatchesTransform) {
  const auto p = poisson(1.5, 60);
  for (double s : {0.3, -0.6}) {
    std::vector<double> m(5);
    for (int k = 0; k < 5; ++k) m[static_cast<std::size_t>(k)] = factorial_moment(p, MultiIndex{k});
    EXPECT_NEAR(s_ordered_mixed_moment(p, ModeSpec({2.0}), MomentAtom::intensity(MultiIndex{4}), s).value,
                s_transform_W(4, m, s, 2.0), 1e-12 * s_transform_W(4, m, s, 2.0));
  }
}

TEST(OrderedMoment, ProductFieldFactorizes) {
  // Coherent (w = 1) on the intensity dimension, vacuum on the probability one.
  const PhotonNumberDistribution p(outer({fixtures::poisson_values(1.0, 60), {1.0, 0.0, 0.0}}));
  const auto v = s_ordered_mixed_moment(p, ModeSpec({1.0, 1.0}), MomentAtom(MultiIndex{2, 0}, 0b10), 0.0);
  EXPECT_NEAR(v.value, 3.5 * 2.0 / 3.0, 1e-12);
}

TEST(OrderedMoment, MixedAtomMatchesExplicitTransform) {
  const PhotonNumberDistribution p(
      outer({fixtures::poisson_values(0.9, 40), fixtures::thermal(0.4, 40), fixtures::poisson_values(0.3, 40)}));
  const ModeSpec modes({1.5, 2.0, 1.0});
  const double s = -0.25;
  const MomentAtom atom(MultiIndex{2, 3, 1}, 0b010);
  // Factorizes: <W1^2>_s * p2_s(3) * <W3>_s.
  const auto m1 = [&](int dim, int k) {
    return factorial_moment(marginalize(p, {dim}), MultiIndex{k});
  };
  std::vector<double> w1{1.0, m1(0, 1), m1(0, 2)}, w3{1.0, m1(2, 1)};
  const auto marg2 = fixtures::values(marginalize(p, {1}));
  const double expect = s_transform_W(2, w1, s, 1.5) * s_transform_p(3, marg2, s, 2.0) * s_transform_W(1, w3, s, 1.0);
  EXPECT_NEAR(s_ordered_mixed_moment(p, modes, atom, s).value, expect, 1e-12 * expect);
}

TEST(OrderedMoment, TruncationBoundWarns) {
  const PhotonNumberDistribution p(Tensor(MultiIndex{3}, std::vector<double>{0.5, 0.3, 0.2 - 1e-6}), 1e-6);
  ScopedWarningCapture cap;
  const MomentTable table(p, ModeSpec({1.0}));
  const auto v = table.get(MomentAtom::probability(MultiIndex{1}), 0.5);
  EXPECT_DOUBLE_EQ(v.truncation_bound, 1e-6);
  EXPECT_EQ(cap.count(), 1);
  EXPECT_EQ(table.get(MomentAtom::probability(MultiIndex{1}), 1.0).truncation_bound, 0.0);
}

TEST(MomentTable, MemoizationIsTransparent) {
  std::mt19937_64 rng(5);
  const auto p = fixtures::random_classical(rng, 3, 12);
  const ModeSpec modes({1.0, 2.0, 3.0});
  const MomentTable table(p, modes);
  std::vector<MomentAtom> atoms{MomentAtom::intensity(MultiIndex{1, 2, 0}), MomentAtom(MultiIndex{2, 1, 3}, 0b100),
                                MomentAtom(MultiIndex{0, 2, 1}, 0b011), MomentAtom::probability(MultiIndex{1, 1, 1})};
  for (double s : {1.0, 0.4, -0.3})
    for (const auto& a : atoms) {
      const double first = table.get(a, s).value;
      const double second = table.get(a, s).value;
      const double fresh = s_ordered_mixed_moment(p, modes, a, s).value;
      EXPECT_EQ(first, second);
      EXPECT_EQ(first, fresh) << a.label() << " s=" << s;
    }
  EXPECT_GT(table.cached_values(), 0u);
}

TEST(MomentTable, ConcurrentLookupsAgree) {
  std::mt19937_64 rng(6);
  const auto p = fixtures::random_classical(rng, 2, 15);
  const ModeSpec modes({1.0, 1.0});
  const MomentTable shared(p, modes);
  std::vector<double> results(8);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      double acc = 0.0;
      for (int rep = 0; rep < 20; ++rep)
        for (int k = 0; k < 4; ++k) acc += shared.get(MomentAtom(MultiIndex{k, 2}, 0b10), 0.1 * (rep % 5)).value;
      results[static_cast<std::size_t>(t)] = acc;
    });
  for (auto& th : threads) th.join();
  for (double r : results) EXPECT_EQ(r, results[0]);
}

TEST(OrderedMoment, ClassicalIntensityMomentsNonnegative) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = fixtures::random_classical(rng, 2, 20);
    const MomentTable table(p, ModeSpec({1.0, 2.5}));
    for (double s : {1.0, 0.5, 0.0, -0.5, -0.99})
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) EXPECT_GE(table.get(MomentAtom::intensity(MultiIndex{a, b}), s).value, 0.0);
  }
}
