#pragma once

#include <string>
#include <vector>

#include "nckit/criteria.hpp"

namespace nckit::presets {

// Named criterion suites for three-dimensional fields (dims 1, 2, 3 map to
// 0-based axes 0, 1, 2). Photon-number arguments refer to the conditioning
// dimensions named in each suite.

/// P^{W,3}, P^{W,13}, P^{W,23}, C_{111}^{120}, C_{111}^{210}, C_{111}^{002}, M^W.
std::vector<CriterionExpr> intensity_3d();
/// C_{101}^{200}, C_{110}^{200}, C_{011}^{020} and M^{W,ij} for the three pairs.
std::vector<CriterionExpr> marginal_2d();
/// C^p_n and M^p_n: minima of probability Cauchy-Schwarz / matrix criteria
/// over the neighbourhood |m - n| <= 1.
std::vector<CriterionExpr> local_probability(const MultiIndex& n);
/// E^{p,13}_n.
std::vector<CriterionExpr> pair_probability(const MultiIndex& n);
/// C^{pW,k}_{n_k,m_k} and M^{pW,k}_{n_k} for (i,j,k) = (1,2,3), (2,3,1), (3,1,2).
std::vector<CriterionExpr> hybrid_conditional_2d(int n_k, int m_k);
/// C^{Wp,i}_{n_j,n_k} and M^{Wp,i}_{n_j,n_k} for the same three triples.
std::vector<CriterionExpr> hybrid_conditional_1d(int n_j, int n_k);
/// H1 and H2 on the full field and on each two-dimensional marginal.
std::vector<CriterionExpr> hillery(int dims = 3);

/// Probability pair criterion for dimensions k, l (0-based):
/// (n_k+2)/(n_l+1) p(n+2e_k) + (n_l+2)/(n_k+1) p(n+2e_l) - 2 p(n+e_k+e_l).
CriterionExpr pair_probability_criterion(const MultiIndex& n, int k, int l);

/// Resolves a suite by name: intensity_3d, marginal_2d, local_prob,
/// pair_prob, hybrid_conditional2d, hybrid_conditional1d, hillery. A leading
/// "eqNN_" tag is accepted and ignored. `n` feeds the parameterized suites
/// (local_prob and pair_prob use all three entries, hybrid_conditional2d uses
/// n[2] as n_k and n[0] as m_k, hybrid_conditional1d uses n[1], n[2]).
std::vector<CriterionExpr> suite(const std::string& name, const MultiIndex& n = MultiIndex{0, 0, 0});
std::vector<std::string> suite_names();
std::string canonical_suite_name(const std::string& name);

}  // namespace nckit::presets
