#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nckit/moments.hpp"
#include "nckit/polynomial.hpp"

namespace nckit {

enum class Family {
  cauchy_schwarz,
  matrix3,
  matrix2,
  majorization_E,
  majorization_sum,
  polynomial,
  probability,
  hybrid,
  hillery_even,
  hillery_odd,
  preset
};

std::string to_string(Family f);

struct Term {
  double coefficient = 0.0;
  std::vector<MomentAtom> factors;

  friend bool operator==(const Term&, const Term&) = default;
};

/// A non-classicality criterion: a polynomial in moment atoms whose value is
/// nonnegative for every classical field. Negative values witness
/// non-classicality.
///
/// Two special shapes share the type: a criterion with `alternatives` takes
/// the minimum over them, and the Hillery families are evaluated from the
/// probability generating function over `hillery_dims` rather than from terms.
struct CriterionExpr {
  std::string id;
  Family family = Family::preset;
  std::string indices;
  int dims = 0;
  std::vector<Term> terms;
  std::vector<CriterionExpr> alternatives;
  std::vector<int> hillery_dims;

  bool is_minimum() const { return !alternatives.empty(); }
  bool is_hillery() const { return family == Family::hillery_even || family == Family::hillery_odd; }
};

/// Sorts factors and terms, merges equal factor lists and drops exact zeros.
/// Builders always return canonical expressions, so structural comparison is
/// plain equality of the term lists.
std::vector<Term> canonical_terms(const std::vector<Term>& terms);

// Intensity criteria.
CriterionExpr build_cauchy_schwarz(const MultiIndex& n, const MultiIndex& m);
CriterionExpr build_matrix3(const MultiIndex& k, const MultiIndex& l, const MultiIndex& m);
CriterionExpr build_matrix2(const MultiIndex& k, const MultiIndex& l);
/// <W^i (W_k - W_l)^2>; k, l are 0-based dimensions.
CriterionExpr build_E(const MultiIndex& i, int k, int l);
/// <W^i prod_{k<l} (W_k - W_l)^(2 I_kl)>; only the upper triangle of I is read.
CriterionExpr build_E_general(const MultiIndex& i, const std::vector<std::vector<int>>& I);
/// Permutation-summed majorization criterion for a one-ball move i -> iprime
/// (or any permutation of such a move).
CriterionExpr build_majorization(const MultiIndex& i, const MultiIndex& iprime);
/// Sum of E criteria into which the majorization criterion decomposes, with
/// every E counted once.
CriterionExpr build_majorization_E_sum(const MultiIndex& i, const MultiIndex& iprime);
/// <prod_{k in ks} (sum_j W_j - 2 W_k)^2>; ks 0-based.
CriterionExpr build_polynomial(int dims, const std::vector<int>& ks);
/// <poly> for an arbitrary polynomial in the intensities.
CriterionExpr build_polynomial_expr(std::string id, int dims, const Polynomial& poly);

/// Replaces W^n by n! p(n) on every factor. Every term must have the same
/// number of factors; coefficients are then divided by the smallest per-term
/// factorial weight.
CriterionExpr intensity_to_probability(const CriterionExpr& expr);
/// The same mapping restricted to prob_dims (0-based), producing mixed atoms.
CriterionExpr hybridize(const CriterionExpr& expr, const std::set<int>& prob_dims);

enum class HilleryParity { even, odd };
/// H1 (even) or H2 (odd) on the marginal over `keep` (0-based); empty keep
/// means all dimensions.
CriterionExpr build_hillery(HilleryParity parity, int dims, std::vector<int> keep = {});

/// Minimum over a family of criteria.
CriterionExpr build_minimum(std::string id, Family family, std::string indices,
                            std::vector<CriterionExpr> members);

struct Evaluation {
  double value = 0.0;
  /// sum over terms of |coefficient * product of factors|.
  double scale = 0.0;
  double truncation_bound = 0.0;
  bool outside_cutoff = false;
  /// For minimum criteria: id and indices of the minimizing member.
  std::string argmin;

  bool violated(double relative_tol) const { return value < -relative_tol * scale; }
};

Evaluation evaluate(const CriterionExpr& expr, const MomentTable& table, double s = 1.0);
Evaluation evaluate(const CriterionExpr& expr, const PhotonNumberDistribution& p, const ModeSpec& modes,
                    double s = 1.0);

/// H1/H2 value from the generating function together with the truncation
/// bound (tail mass).
Evaluation evaluate_hillery(HilleryParity parity, const PhotonNumberDistribution& p, const ModeSpec& modes,
                            const std::vector<int>& keep, double s);

}  // namespace nckit
