#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nckit/criteria.hpp"

namespace nckit {

struct NcdOptions {
  /// Coarse scan step in s.
  double grid = 0.01;
  /// Bottom of the scan; the probability transform is singular at s = -1.
  double s_min = -1.0 + 1e-6;
  /// Width of the final bisection bracket.
  double bisection_tol = 1e-6;
  /// A value counts as violated when it is below -relative_tol * scale.
  double relative_tol = 1e-10;
};

struct NcdResult {
  double tau = 0.0;
  double s_threshold = 1.0;
  bool violated_at_s1 = false;
  /// Violated at every scanned s; tau = 1.
  bool saturated = false;
  /// The scan found violated points below the first crossing.
  bool nonmonotone = false;
  std::vector<std::pair<double, double>> scan_profile;
  /// Minimizing member at s = 1 for minimum criteria.
  std::string argmin;
};

NcdResult ncd(const CriterionExpr& expr, const MomentTable& table, const NcdOptions& opts = {});
NcdResult ncd(const CriterionExpr& expr, const PhotonNumberDistribution& p, const ModeSpec& modes,
              const NcdOptions& opts = {});

/// Standard deviation of tau over replicate fields, one row per criterion.
/// `make_field` turns replicate r into a distribution (for example by
/// resampling and reconstructing); replicates run in parallel and are merged
/// in replicate order.
std::vector<double> bootstrap_tau_stddev(const std::vector<CriterionExpr>& exprs, int replicates,
                                         const std::function<PhotonNumberDistribution(int)>& make_field,
                                         const ModeSpec& modes, const NcdOptions& opts = {});

}  // namespace nckit
