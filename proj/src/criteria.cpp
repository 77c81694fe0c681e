#include "nckit/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nckit/error.hpp"

namespace nckit {
namespace {

MomentAtom W(const MultiIndex& powers) { return MomentAtom::intensity(powers); }

void check_same_length(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size() || a.empty()) throw ArgumentError("multi-indices must have equal nonzero length");
}

void check_nonnegative(const MultiIndex& a, const char* what) {
  if (!a.nonnegative()) throw ArgumentError(std::string(what) + " has a negative entry");
}

CriterionExpr make(std::string id, Family family, std::string indices, int dims, std::vector<Term> terms) {
  CriterionExpr e;
  e.id = std::move(id);
  e.family = family;
  e.indices = std::move(indices);
  e.dims = dims;
  e.terms = canonical_terms(terms);
  return e;
}

std::vector<Term> polynomial_terms(const Polynomial& poly) {
  std::vector<Term> terms;
  for (const auto& [e, c] : poly) terms.push_back({c, {W(e)}});
  return terms;
}

bool is_one_ball_move(const MultiIndex& i, const MultiIndex& iprime) {
  auto sorted = [](const MultiIndex& v) {
    auto x = v.values();
    std::sort(x.begin(), x.end());
    return x;
  };
  const auto target = sorted(iprime);
  if (sorted(i) == target) return true;
  for (std::size_t k = 0; k < i.size(); ++k)
    for (std::size_t l = 0; l < i.size(); ++l) {
      if (k == l || i[l] < 1 || i[k] < i[l]) continue;
      MultiIndex moved = i;
      ++moved[k];
      --moved[l];
      if (sorted(moved) == target) return true;
    }
  return false;
}

// One-ball move (k, l) taking i to a permutation of iprime, with i_k >= i_l.
std::optional<std::pair<std::size_t, std::size_t>> find_move(const MultiIndex& i, const MultiIndex& iprime) {
  auto sorted = [](std::vector<int> x) {
    std::sort(x.begin(), x.end());
    return x;
  };
  const auto target = sorted(iprime.values());
  for (std::size_t k = 0; k < i.size(); ++k)
    for (std::size_t l = 0; l < i.size(); ++l) {
      if (k == l || i[l] < 1 || i[k] < i[l]) continue;
      MultiIndex moved = i;
      ++moved[k];
      --moved[l];
      if (sorted(moved.values()) == target) return std::make_pair(k, l);
    }
  return std::nullopt;
}

std::string index_label(const char* name, const MultiIndex& v) { return std::string(name) + "=" + v.label(); }

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::cauchy_schwarz: return "cauchy_schwarz";
    case Family::matrix3: return "matrix3";
    case Family::matrix2: return "matrix2";
    case Family::majorization_E: return "majorization_E";
    case Family::majorization_sum: return "majorization_sum";
    case Family::polynomial: return "polynomial";
    case Family::probability: return "probability";
    case Family::hybrid: return "hybrid";
    case Family::hillery_even: return "hillery_even";
    case Family::hillery_odd: return "hillery_odd";
    case Family::preset: return "preset";
  }
  return "unknown";
}

std::vector<Term> canonical_terms(const std::vector<Term>& terms) {
  std::map<std::vector<MomentAtom>, double> merged;
  for (const auto& t : terms) {
    if (t.factors.empty()) throw ArgumentError("criterion term without factors");
    if (!std::isfinite(t.coefficient)) throw ArgumentError("criterion coefficient is not finite");
    auto f = t.factors;
    std::sort(f.begin(), f.end());
    merged[std::move(f)] += t.coefficient;
  }
  std::vector<Term> out;
  for (auto& [f, c] : merged)
    if (c != 0.0) out.push_back({c, f});
  return out;
}

CriterionExpr build_cauchy_schwarz(const MultiIndex& n, const MultiIndex& m) {
  check_same_length(n, m);
  check_nonnegative(n, "n");
  check_nonnegative(m, "m");
  const MultiIndex rest = 2 * n - m;
  if (!rest.nonnegative()) throw ArgumentError("Cauchy-Schwarz criterion needs 2n - m >= 0");
  return make("C_{" + n.label() + "}^{" + m.label() + "}", Family::cauchy_schwarz,
              index_label("n", n) + ";" + index_label("m", m), static_cast<int>(n.size()),
              {{1.0, {W(m), W(rest)}}, {-1.0, {W(n), W(n)}}});
}

CriterionExpr build_matrix3(const MultiIndex& k, const MultiIndex& l, const MultiIndex& m) {
  check_same_length(k, l);
  check_same_length(k, m);
  for (const auto* v : {&k, &l, &m}) check_nonnegative(*v, "matrix index");
  const MultiIndex x[3] = {k, l, m};
  auto a = [&](int r, int c) { return W(x[r] + x[c]); };
  std::vector<Term> terms = {
      {1.0, {a(0, 0), a(1, 1), a(2, 2)}}, {2.0, {a(0, 1), a(0, 2), a(1, 2)}},
      {-1.0, {a(0, 0), a(1, 2), a(1, 2)}}, {-1.0, {a(1, 1), a(0, 2), a(0, 2)}},
      {-1.0, {a(2, 2), a(0, 1), a(0, 1)}},
  };
  return make("M_{" + k.label() + "," + l.label() + "," + m.label() + "}", Family::matrix3,
              index_label("k", k) + ";" + index_label("l", l) + ";" + index_label("m", m),
              static_cast<int>(k.size()), terms);
}

CriterionExpr build_matrix2(const MultiIndex& k, const MultiIndex& l) {
  check_same_length(k, l);
  check_nonnegative(k, "k");
  check_nonnegative(l, "l");
  return make("M_{" + k.label() + "," + l.label() + "}", Family::matrix2,
              index_label("k", k) + ";" + index_label("l", l), static_cast<int>(k.size()),
              {{1.0, {W(2 * k), W(2 * l)}}, {-1.0, {W(k + l), W(k + l)}}});
}

CriterionExpr build_E(const MultiIndex& i, int k, int l) {
  const int n = static_cast<int>(i.size());
  if (k == l) throw ArgumentError("E criterion needs two distinct dimensions");
  if (k < 0 || l < 0 || k >= n || l >= n) throw ArgumentError("E criterion dimension out of range");
  check_nonnegative(i, "i");
  const auto ek = MultiIndex::unit(i.size(), static_cast<std::size_t>(k));
  const auto el = MultiIndex::unit(i.size(), static_cast<std::size_t>(l));
  return make("E_{" + i.label() + "}^{" + std::to_string(k + 1) + std::to_string(l + 1) + "}",
              Family::majorization_E,
              index_label("i", i) + ";k=" + std::to_string(k + 1) + ";l=" + std::to_string(l + 1), n,
              {{1.0, {W(i + 2 * ek)}}, {-2.0, {W(i + ek + el)}}, {1.0, {W(i + 2 * el)}}});
}

CriterionExpr build_E_general(const MultiIndex& i, const std::vector<std::vector<int>>& I) {
  check_nonnegative(i, "i");
  const std::size_t n = i.size();
  Polynomial poly = monomial(i);
  std::string label;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      const int e = (k < I.size() && l < I[k].size()) ? I[k][l] : 0;
      if (e < 0) throw ArgumentError("E criterion exponents must be nonnegative");
      if (e == 0) continue;
      std::vector<double> c(n, 0.0);
      c[k] = 1.0;
      c[l] = -1.0;
      poly = multiply(poly, power(linear_form(c), 2 * e));
      label += (label.empty() ? "" : ",") + std::to_string(k + 1) + std::to_string(l + 1) + ":" + std::to_string(e);
    }
  auto e = make("E_{" + i.label() + "}^{I}", Family::majorization_E, index_label("i", i) + ";I=" + label,
                static_cast<int>(n), polynomial_terms(poly));
  return e;
}

CriterionExpr build_majorization(const MultiIndex& i, const MultiIndex& iprime) {
  check_same_length(i, iprime);
  check_nonnegative(i, "i");
  check_nonnegative(iprime, "i'");
  if (!is_one_ball_move(i, iprime)) throw ArgumentError("i' must follow from i by a single one-ball move");
  std::vector<Term> terms;
  auto add_perms = [&](const MultiIndex& v, double sign) {
    std::vector<std::size_t> perm(v.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      MultiIndex p(v.size());
      for (std::size_t d = 0; d < v.size(); ++d) p[d] = v[perm[d]];
      terms.push_back({sign, {W(p)}});
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  add_perms(iprime, 1.0);
  add_perms(i, -1.0);
  return make("S_{" + i.label() + "}^{" + iprime.label() + "}", Family::majorization_sum,
              index_label("i", i) + ";i'=" + iprime.label(), static_cast<int>(i.size()), terms);
}

CriterionExpr build_majorization_E_sum(const MultiIndex& i, const MultiIndex& iprime) {
  check_same_length(i, iprime);
  if (!is_one_ball_move(i, iprime)) throw ArgumentError("i' must follow from i by a single one-ball move");
  const std::size_t n = i.size();
  std::vector<Term> terms;
  const auto move = find_move(i, iprime);
  if (move) {
    const int ik = i[move->first];
    const int il = i[move->second];
    std::vector<int> rest;
    for (std::size_t d = 0; d < n; ++d)
      if (d != move->first && d != move->second) rest.push_back(i[d]);
    for (std::size_t kp = 0; kp < n; ++kp)
      for (std::size_t lp = 0; lp < kp; ++lp) {
        std::vector<std::size_t> others;
        for (std::size_t d = 0; d < n; ++d)
          if (d != kp && d != lp) others.push_back(d);
        std::vector<std::size_t> perm(rest.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          for (int t = 0; t <= ik - il; ++t) {
            MultiIndex base(n);
            for (std::size_t r = 0; r < others.size(); ++r) base[others[r]] = rest[perm[r]];
            base[kp] = ik - 1 - t;
            base[lp] = il - 1 + t;
            for (const auto& term : build_E(base, static_cast<int>(kp), static_cast<int>(lp)).terms)
              terms.push_back(term);
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
  }
  return make("Esum_{" + i.label() + "}^{" + iprime.label() + "}", Family::majorization_E,
              index_label("i", i) + ";i'=" + iprime.label(), static_cast<int>(n), terms);
}

CriterionExpr build_polynomial(int dims, const std::vector<int>& ks) {
  if (dims <= 0 || ks.empty()) throw ArgumentError("polynomial criterion needs dimensions and factors");
  Polynomial poly = monomial(MultiIndex(static_cast<std::size_t>(dims)));
  std::string label;
  for (int k : ks) {
    if (k < 0 || k >= dims) throw ArgumentError("polynomial criterion dimension out of range");
    std::vector<double> c(static_cast<std::size_t>(dims), 1.0);
    c[static_cast<std::size_t>(k)] = -1.0;
    poly = multiply(poly, power(linear_form(c), 2));
    label += std::to_string(k + 1);
  }
  auto e = build_polynomial_expr("P^{W," + label + "}", dims, poly);
  e.indices = "k=" + label;
  return e;
}

CriterionExpr build_polynomial_expr(std::string id, int dims, const Polynomial& poly) {
  for (const auto& [e, c] : poly)
    if (e.size() != static_cast<std::size_t>(dims)) throw ArgumentError("polynomial dimension mismatch");
  return make(std::move(id), Family::polynomial, "", dims, polynomial_terms(poly));
}

CriterionExpr hybridize(const CriterionExpr& expr, const std::set<int>& prob_dims) {
  if (prob_dims.empty()) return expr;
  if (expr.is_hillery()) throw ArgumentError("Hillery criteria have no probability mapping");
  std::uint32_t mask = 0;
  for (int d : prob_dims) {
    if (d < 0 || d >= expr.dims) throw ArgumentError("probability dimension out of range");
    mask |= 1u << d;
  }
  const bool all = static_cast<int>(prob_dims.size()) == expr.dims;
  std::string tag;
  for (int d : prob_dims) tag += std::to_string(d + 1);

  CriterionExpr out;
  out.id = (all ? "p:" : "pW{" + tag + "}:") + expr.id;
  out.family = all ? Family::probability : Family::hybrid;
  out.indices = expr.indices;
  out.dims = expr.dims;
  for (const auto& alt : expr.alternatives) out.alternatives.push_back(hybridize(alt, prob_dims));
  if (expr.terms.empty()) return out;

  std::set<std::size_t> counts;
  for (const auto& t : expr.terms) counts.insert(t.factors.size());
  if (counts.size() != 1)
    throw ArgumentError("probability mapping needs the same number of factors in every term");

  std::vector<double> weights;
  std::vector<Term> mapped;
  for (const auto& t : expr.terms) {
    double w = 1.0;
    Term m{t.coefficient, {}};
    for (const auto& f : t.factors) {
      if (!f.pure_intensity()) throw ArgumentError("probability mapping needs pure intensity factors");
      MultiIndex p(f.values().size());
      for (int d : prob_dims) p[static_cast<std::size_t>(d)] = f.values()[static_cast<std::size_t>(d)];
      w *= p.factorial();
      m.factors.emplace_back(f.values(), mask);
    }
    weights.push_back(w);
    mapped.push_back(std::move(m));
  }
  const double wmin = *std::min_element(weights.begin(), weights.end());
  for (std::size_t t = 0; t < mapped.size(); ++t) mapped[t].coefficient *= weights[t] / wmin;
  out.terms = canonical_terms(mapped);
  return out;
}

CriterionExpr intensity_to_probability(const CriterionExpr& expr) {
  std::set<int> all;
  for (int d = 0; d < expr.dims; ++d) all.insert(d);
  return hybridize(expr, all);
}

CriterionExpr build_minimum(std::string id, Family family, std::string indices, std::vector<CriterionExpr> members) {
  if (members.empty()) throw ArgumentError("minimum criterion needs members");
  CriterionExpr e;
  e.id = std::move(id);
  e.family = family;
  e.indices = std::move(indices);
  e.dims = members.front().dims;
  e.alternatives = std::move(members);
  return e;
}

Evaluation evaluate(const CriterionExpr& expr, const MomentTable& table, double s) {
  if (expr.dims != table.distribution().dims()) throw ArgumentError("criterion dimension does not match field");
  if (expr.is_hillery()) {
    return evaluate_hillery(expr.family == Family::hillery_even ? HilleryParity::even : HilleryParity::odd,
                            table.distribution(), table.modes(), expr.hillery_dims, s);
  }
  if (expr.is_minimum()) {
    Evaluation best;
    bool first = true;
    for (const auto& alt : expr.alternatives) {
      Evaluation e = evaluate(alt, table, s);
      if (first || e.value < best.value) {
        best = e;
        best.argmin = alt.id + (alt.indices.empty() ? "" : "[" + alt.indices + "]");
        first = false;
      }
    }
    return best;
  }
  Evaluation out;
  for (const auto& t : expr.terms) {
    double prod = t.coefficient;
    double bound = 0.0;
    std::vector<MomentValue> vals;
    for (const auto& f : t.factors) vals.push_back(table.get(f, s));
    for (std::size_t a = 0; a < vals.size(); ++a) {
      prod *= vals[a].value;
      out.outside_cutoff = out.outside_cutoff || vals[a].outside_cutoff;
      double b = vals[a].truncation_bound * std::abs(t.coefficient);
      for (std::size_t c = 0; c < vals.size(); ++c)
        if (c != a) b *= std::abs(vals[c].value);
      bound += b;
    }
    out.value += prod;
    out.scale += std::abs(prod);
    out.truncation_bound += bound;
  }
  if (!std::isfinite(out.value)) throw NumericalError("criterion " + expr.id + " is not finite at s=" + std::to_string(s));
  return out;
}

Evaluation evaluate(const CriterionExpr& expr, const PhotonNumberDistribution& p, const ModeSpec& modes, double s) {
  const MomentTable table(p, modes);
  return evaluate(expr, table, s);
}

}  // namespace nckit
