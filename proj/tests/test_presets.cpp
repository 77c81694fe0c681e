#include <gtest/gtest.h>

#include <tuple>

#include "nckit/error.hpp"
#include "nckit/presets.hpp"
#include "nckit/synth.hpp"

using namespace nckit;

namespace {

const PhotonNumberDistribution& model() {
  static const PhotonNumberDistribution p = [] {
    auto spec = twin_beam_3d_spec(10.0, MultiIndex{1, 1, 1});
    spec.cutoffs = cutoffs_for_tail(spec, 1e-12);
    return compose_field(spec);
  }();
  return p;
}

std::vector<std::string> ids(const std::vector<CriterionExpr>& v) {
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(e.id);
  return out;
}

}  // namespace

TEST(Presets, IntensitySuiteContents) {
  EXPECT_EQ(ids(presets::intensity_3d()),
            (std::vector<std::string>{"P^{W,3}", "P^{W,13}", "P^{W,23}", "C_{111}^{120}", "C_{111}^{210}",
                                      "C_{111}^{002}", "M^W"}));
  EXPECT_EQ(ids(presets::marginal_2d()),
            (std::vector<std::string>{"C_{101}^{200}", "C_{110}^{200}", "C_{011}^{020}", "M^{W,12}", "M^{W,13}",
                                      "M^{W,23}"}));
}

TEST(Presets, PolynomialCriterionExpansion) {
  // P^{W,3} = <(W1 + W2 - W3)^2>.
  const auto p3 = presets::intensity_3d()[0];
  Polynomial expect = power(linear_form({1, 1, -1}), 2);
  ASSERT_EQ(p3.terms.size(), expect.size());
  for (const auto& t : p3.terms) EXPECT_EQ(t.coefficient, expect.at(t.factors[0].values()));
}

TEST(Presets, SuiteLookupAcceptsNumberedTag) {
  EXPECT_EQ(presets::canonical_suite_name("eq34_intensity_3d"), "intensity_3d");
  EXPECT_EQ(presets::canonical_suite_name("marginal_2d"), "marginal_2d");
  for (const auto& name : presets::suite_names())
    EXPECT_FALSE(presets::suite(name, MultiIndex{4, 4, 8}).empty()) << name;
  EXPECT_THROW(presets::suite("nope"), ArgumentError);
  EXPECT_THROW(presets::suite("hillery", MultiIndex{1, 1}), ArgumentError);
}

TEST(Presets, LocalProbabilityExcludesDegenerateMembers) {
  const auto v = presets::local_probability({3, 3, 6});
  ASSERT_EQ(v.size(), 2u);
  for (const auto& e : v) {
    ASSERT_TRUE(e.is_minimum());
    for (const auto& alt : e.alternatives) EXPECT_FALSE(alt.terms.empty());
  }
  EXPECT_LE(v[0].alternatives.size(), 26u);
  EXPECT_EQ(v[0].id, "C^p_{336}");
  EXPECT_EQ(v[1].id, "M^p_{336}");
}

TEST(Presets, LocalProbabilityViolatedAtCentre) {
  const auto v = presets::local_probability({5, 5, 10});
  const MomentTable t(model(), twin_beam_3d_modes(10.0));
  for (const auto& e : v) {
    const auto ev = evaluate(e, t);
    EXPECT_TRUE(ev.violated(1e-10)) << e.id;
    EXPECT_FALSE(ev.argmin.empty());
  }
}

TEST(Presets, PairProbabilityMatchesPrintedCoefficients) {
  const auto e = presets::pair_probability_criterion({2, 1, 3}, 0, 2);
  EXPECT_EQ(e.id, "E^{p,13}_{213}");
  ASSERT_EQ(e.terms.size(), 3u);
  for (const auto& t : e.terms) {
    const auto& v = t.factors[0].values();
    if (v == MultiIndex{4, 1, 3}) EXPECT_DOUBLE_EQ(t.coefficient, 4.0 / 4.0);
    if (v == MultiIndex{2, 1, 5}) EXPECT_DOUBLE_EQ(t.coefficient, 5.0 / 3.0);
    if (v == MultiIndex{3, 1, 4}) EXPECT_DOUBLE_EQ(t.coefficient, -2.0);
  }
}

TEST(Presets, HybridConditional2dEqualsHybridizedIntensityCriteria) {
  const int n = 6, m = 2;
  const auto hand = presets::hybrid_conditional_2d(n, m);
  const int triples[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (int t = 0; t < 3; ++t) {
    const auto [i, j, k] = std::tuple{triples[t][0], triples[t][1], triples[t][2]};
    MultiIndex nn(3), mm(3), kk(3), ll(3), mx(3);
    nn[i] = 1, nn[j] = 1, nn[k] = n;
    mm[i] = 2, mm[k] = n + m;
    kk[k] = n;
    ll[i] = 1, ll[k] = n;
    mx[j] = 1, mx[k] = n;
    const auto c = hybridize(build_cauchy_schwarz(nn, mm), {k});
    const auto mat = hybridize(build_matrix3(kk, ll, mx), {k});
    EXPECT_EQ(c.terms, hand[2 * t].terms) << hand[2 * t].id;
    EXPECT_EQ(mat.terms, hand[2 * t + 1].terms) << hand[2 * t + 1].id;
  }
}

TEST(Presets, HybridConditional1dEqualsHybridizedIntensityCriteria) {
  const int nj = 3, nk = 5;
  const auto hand = presets::hybrid_conditional_1d(nj, nk);
  const int triples[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (int t = 0; t < 3; ++t) {
    const auto [i, j, k] = std::tuple{triples[t][0], triples[t][1], triples[t][2]};
    MultiIndex base(3);
    base[j] = nj, base[k] = nk;
    const auto ei = MultiIndex::unit(3, static_cast<std::size_t>(i));
    const auto c = hybridize(build_cauchy_schwarz(base + ei, base + 2 * ei), {j, k});
    const auto mat = hybridize(build_matrix3(base, base + ei, base + 2 * ei), {j, k});
    EXPECT_EQ(c.terms, hand[2 * t].terms) << hand[2 * t].id;
    EXPECT_EQ(mat.terms, hand[2 * t + 1].terms) << hand[2 * t + 1].id;
  }
}

TEST(Presets, HillerySuite) {
  EXPECT_EQ(ids(presets::hillery()), (std::vector<std::string>{"H1", "H1^{12}", "H1^{13}", "H1^{23}", "H2", "H2^{12}",
                                                                "H2^{13}", "H2^{23}"}));
  EXPECT_EQ(presets::hillery(2).size(), 2u);
}

TEST(Presets, ArgumentValidation) {
  EXPECT_THROW(presets::hybrid_conditional_2d(2, 3), ArgumentError);
  EXPECT_THROW(presets::hybrid_conditional_1d(-1, 0), ArgumentError);
  EXPECT_THROW(presets::pair_probability_criterion({1, 1, 1}, 0, 0), ArgumentError);
  EXPECT_THROW(presets::local_probability({-1, 0, 0}), ArgumentError);
}

TEST(Presets, GaussianModelViolations) {
  const MomentTable t(model(), twin_beam_3d_modes(10.0));
  for (const auto& e : presets::intensity_3d()) EXPECT_TRUE(evaluate(e, t).violated(1e-10)) << e.id;
  for (const auto& e : presets::marginal_2d()) {
    const bool pair12 = e.id == "C_{110}^{200}" || e.id == "M^{W,12}";
    EXPECT_EQ(evaluate(e, t).violated(1e-10), !pair12) << e.id;
  }
}
