#include "nckit/presets.hpp"

#include <regex>
#include <set>

#include "nckit/error.hpp"

namespace nckit::presets {
namespace {

constexpr int kDims = 3;
constexpr int kTriples[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};

MultiIndex e(int d) { return MultiIndex::unit(kDims, static_cast<std::size_t>(d)); }

CriterionExpr renamed(CriterionExpr c, std::string id) {
  c.id = std::move(id);
  return c;
}

// Mixed atom with intensity powers wi, wj on dims i, j and probability index
// nk on dim k.
MomentAtom conditioned_on_one(int i, int wi, int j, int wj, int k, int nk) {
  MultiIndex v(kDims);
  v[static_cast<std::size_t>(i)] = wi;
  v[static_cast<std::size_t>(j)] = wj;
  v[static_cast<std::size_t>(k)] = nk;
  return MomentAtom(v, 1u << k);
}

// Intensity power wi on dim i, probability indices nj, nk on dims j, k.
MomentAtom conditioned_on_two(int i, int wi, int j, int nj, int k, int nk) {
  MultiIndex v(kDims);
  v[static_cast<std::size_t>(i)] = wi;
  v[static_cast<std::size_t>(j)] = nj;
  v[static_cast<std::size_t>(k)] = nk;
  return MomentAtom(v, (1u << j) | (1u << k));
}

double factorial(int n) { return MultiIndex{n}.factorial(); }

CriterionExpr hand_built(std::string id, Family family, std::string indices, std::vector<Term> terms) {
  CriterionExpr c;
  c.id = std::move(id);
  c.family = family;
  c.indices = std::move(indices);
  c.dims = kDims;
  c.terms = canonical_terms(terms);
  return c;
}

std::vector<MultiIndex> neighbourhood(const MultiIndex& n) {
  std::vector<MultiIndex> out;
  const std::size_t d = n.size();
  MultiIndex delta(d, -1);
  while (true) {
    MultiIndex m = n + delta;
    if (m.nonnegative()) out.push_back(m);
    std::size_t a = 0;
    while (a < d && delta[a] == 1) delta[a++] = -1;
    if (a == d) break;
    ++delta[a];
  }
  return out;
}

}  // namespace

std::vector<CriterionExpr> intensity_3d() {
  return {
      build_polynomial(kDims, {2}),
      build_polynomial(kDims, {0, 2}),
      build_polynomial(kDims, {1, 2}),
      build_cauchy_schwarz({1, 1, 1}, {1, 2, 0}),
      build_cauchy_schwarz({1, 1, 1}, {2, 1, 0}),
      build_cauchy_schwarz({1, 1, 1}, {0, 0, 2}),
      renamed(build_matrix3(e(0), e(1), e(2)), "M^W"),
  };
}

std::vector<CriterionExpr> marginal_2d() {
  std::vector<CriterionExpr> out = {
      build_cauchy_schwarz({1, 0, 1}, {2, 0, 0}),
      build_cauchy_schwarz({1, 1, 0}, {2, 0, 0}),
      build_cauchy_schwarz({0, 1, 1}, {0, 2, 0}),
  };
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
    out.push_back(renamed(build_matrix3(MultiIndex(kDims), e(i), e(j)),
                          "M^{W," + std::to_string(i + 1) + std::to_string(j + 1) + "}"));
  return out;
}

std::vector<CriterionExpr> local_probability(const MultiIndex& n) {
  if (!n.nonnegative()) throw ArgumentError("photon numbers must be nonnegative");
  const auto hood = neighbourhood(n);
  std::vector<CriterionExpr> cs, mx;
  std::set<std::vector<Term>, bool (*)(const std::vector<Term>&, const std::vector<Term>&)> seen(
      [](const std::vector<Term>& a, const std::vector<Term>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Term& x, const Term& y) {
          return std::tie(x.factors, x.coefficient) < std::tie(y.factors, y.coefficient);
        });
      });
  for (const auto& m : hood) {
    if (m == n || !(2 * n - m).nonnegative()) continue;
    auto c = intensity_to_probability(build_cauchy_schwarz(n, m));
    if (c.terms.empty() || !seen.insert(c.terms).second) continue;
    cs.push_back(std::move(c));
  }
  for (std::size_t a = 0; a < hood.size(); ++a)
    for (std::size_t b = a + 1; b < hood.size(); ++b) {
      if (hood[a] == n || hood[b] == n) continue;
      auto c = intensity_to_probability(build_matrix3(hood[a], hood[b], n));
      if (c.terms.empty() || !seen.insert(c.terms).second) continue;
      mx.push_back(std::move(c));
    }
  std::vector<CriterionExpr> out;
  if (!cs.empty()) out.push_back(build_minimum("C^p_{" + n.label() + "}", Family::probability, "n=" + n.label(), cs));
  if (!mx.empty()) out.push_back(build_minimum("M^p_{" + n.label() + "}", Family::probability, "n=" + n.label(), mx));
  return out;
}

CriterionExpr pair_probability_criterion(const MultiIndex& n, int k, int l) {
  if (!n.nonnegative()) throw ArgumentError("photon numbers must be nonnegative");
  const int dims = static_cast<int>(n.size());
  if (k == l || k < 0 || l < 0 || k >= dims || l >= dims) throw ArgumentError("invalid pair dimensions");
  const auto ek = MultiIndex::unit(n.size(), static_cast<std::size_t>(k));
  const auto el = MultiIndex::unit(n.size(), static_cast<std::size_t>(l));
  const double nk = n[static_cast<std::size_t>(k)], nl = n[static_cast<std::size_t>(l)];
  CriterionExpr c;
  c.id = "E^{p," + std::to_string(k + 1) + std::to_string(l + 1) + "}_{" + n.label() + "}";
  c.family = Family::probability;
  c.indices = "n=" + n.label();
  c.dims = dims;
  c.terms = canonical_terms({{(nk + 2.0) / (nl + 1.0), {MomentAtom::probability(n + 2 * ek)}},
                             {(nl + 2.0) / (nk + 1.0), {MomentAtom::probability(n + 2 * el)}},
                             {-2.0, {MomentAtom::probability(n + ek + el)}}});
  return c;
}

std::vector<CriterionExpr> pair_probability(const MultiIndex& n) { return {pair_probability_criterion(n, 0, 2)}; }

std::vector<CriterionExpr> hybrid_conditional_2d(int n_k, int m_k) {
  if (n_k < 0 || m_k < 0 || m_k > n_k) throw ArgumentError("need 0 <= m_k <= n_k");
  std::vector<CriterionExpr> out;
  for (const auto& t : kTriples) {
    const int i = t[0], j = t[1], k = t[2];
    const std::string tag = std::to_string(k + 1);
    const double pref = factorial(n_k + m_k) * factorial(n_k - m_k) / (factorial(n_k) * factorial(n_k));
    out.push_back(hand_built(
        "C^{pW," + tag + "}_{" + std::to_string(n_k) + "," + std::to_string(m_k) + "}", Family::hybrid,
        "n_k=" + std::to_string(n_k) + ";m_k=" + std::to_string(m_k),
        {{pref, {conditioned_on_one(i, 2, j, 0, k, n_k + m_k), conditioned_on_one(i, 0, j, 2, k, n_k - m_k)}},
         {-1.0, {conditioned_on_one(i, 1, j, 1, k, n_k), conditioned_on_one(i, 1, j, 1, k, n_k)}}}));
    auto a = [&](int wi, int wj) { return conditioned_on_one(i, wi, j, wj, k, 2 * n_k); };
    out.push_back(hand_built("M^{pW," + tag + "}_{" + std::to_string(n_k) + "}", Family::hybrid,
                             "n_k=" + std::to_string(n_k),
                             {{1.0, {a(0, 0), a(2, 0), a(0, 2)}},
                              {2.0, {a(1, 0), a(0, 1), a(1, 1)}},
                              {-1.0, {a(1, 0), a(1, 0), a(0, 2)}},
                              {-1.0, {a(2, 0), a(0, 1), a(0, 1)}},
                              {-1.0, {a(0, 0), a(1, 1), a(1, 1)}}}));
  }
  return out;
}

std::vector<CriterionExpr> hybrid_conditional_1d(int n_j, int n_k) {
  if (n_j < 0 || n_k < 0) throw ArgumentError("photon numbers must be nonnegative");
  std::vector<CriterionExpr> out;
  for (const auto& t : kTriples) {
    const int i = t[0], j = t[1], k = t[2];
    const std::string tag = std::to_string(i + 1);
    const std::string idx = std::to_string(n_j) + "," + std::to_string(n_k);
    auto c = [&](int w) { return conditioned_on_two(i, w, j, n_j, k, n_k); };
    out.push_back(hand_built("C^{Wp," + tag + "}_{" + idx + "}", Family::hybrid, "n_j,n_k=" + idx,
                             {{1.0, {c(2), c(0)}}, {-1.0, {c(1), c(1)}}}));
    auto m = [&](int w) { return conditioned_on_two(i, w, j, 2 * n_j, k, 2 * n_k); };
    out.push_back(hand_built("M^{Wp," + tag + "}_{" + idx + "}", Family::hybrid, "n_j,n_k=" + idx,
                             {{1.0, {m(0), m(2), m(4)}},
                              {2.0, {m(1), m(2), m(3)}},
                              {-1.0, {m(0), m(3), m(3)}},
                              {-1.0, {m(1), m(1), m(4)}},
                              {-1.0, {m(2), m(2), m(2)}}}));
  }
  return out;
}

std::vector<CriterionExpr> hillery(int dims) {
  std::vector<CriterionExpr> out;
  for (auto parity : {HilleryParity::even, HilleryParity::odd}) {
    out.push_back(build_hillery(parity, dims));
    if (dims >= 3)
      for (int a = 0; a < dims; ++a)
        for (int b = a + 1; b < dims; ++b) out.push_back(build_hillery(parity, dims, {a, b}));
  }
  return out;
}

std::vector<std::string> suite_names() {
  return {"intensity_3d",         "marginal_2d",          "local_prob", "pair_prob",
          "hybrid_conditional2d", "hybrid_conditional1d", "hillery"};
}

std::string canonical_suite_name(const std::string& name) {
  static const std::regex numbered(R"(^eq[0-9]+_)");
  return std::regex_replace(name, numbered, "");
}

std::vector<CriterionExpr> suite(const std::string& requested, const MultiIndex& n) {
  if (n.size() != kDims) throw ArgumentError("suite photon numbers need three entries");
  const std::string name = canonical_suite_name(requested);
  if (name == "intensity_3d") return intensity_3d();
  if (name == "marginal_2d") return marginal_2d();
  if (name == "local_prob") return local_probability(n);
  if (name == "pair_prob") return pair_probability(n);
  if (name == "hybrid_conditional2d") return hybrid_conditional_2d(n[2], n[0]);
  if (name == "hybrid_conditional1d") return hybrid_conditional_1d(n[1], n[2]);
  if (name == "hillery") return hillery(kDims);
  throw ArgumentError("unknown criterion suite: " + requested);
}

}  // namespace nckit::presets
