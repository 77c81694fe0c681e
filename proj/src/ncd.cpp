#include "nckit/ncd.hpp"

#include <cmath>
#include <exception>

#include "nckit/error.hpp"

namespace nckit {
namespace {

std::vector<double> scan_points(const NcdOptions& opts) {
  if (!(opts.grid > 0.0) || !(opts.grid < 2.0)) throw ArgumentError("NCD grid step must lie in (0, 2)");
  if (!(opts.s_min > -1.0) || !(opts.s_min < 1.0)) throw ArgumentError("NCD scan bottom must lie in (-1, 1)");
  if (!(opts.bisection_tol > 0.0)) throw ArgumentError("NCD bisection tolerance must be positive");
  std::vector<double> s;
  for (long k = 0;; ++k) {
    const double v = 1.0 - static_cast<double>(k) * opts.grid;
    if (v < opts.s_min) break;
    s.push_back(v);
  }
  if (s.back() > opts.s_min) s.push_back(opts.s_min);
  return s;
}

}  // namespace

NcdResult ncd(const CriterionExpr& expr, const MomentTable& table, const NcdOptions& opts) {
  const auto points = scan_points(opts);
  NcdResult out;
  const Evaluation at1 = evaluate(expr, table, 1.0);
  out.argmin = at1.argmin;
  out.scan_profile.emplace_back(1.0, at1.value);
  out.violated_at_s1 = at1.violated(opts.relative_tol);
  if (!out.violated_at_s1) return out;

  std::vector<Evaluation> evals(points.size());
  evals[0] = at1;
  std::exception_ptr failure;
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 1; k < n; ++k) {
    try {
      evals[static_cast<std::size_t>(k)] = evaluate(expr, table, points[static_cast<std::size_t>(k)]);
    } catch (...) {
#pragma omp critical(nckit_ncd_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::size_t crossing = points.size();
  for (std::size_t k = 1; k < points.size(); ++k) {
    out.scan_profile.emplace_back(points[k], evals[k].value);
    const bool violated = evals[k].violated(opts.relative_tol);
    if (crossing == points.size()) {
      if (!violated) crossing = k;
    } else if (violated) {
      out.nonmonotone = true;
    }
  }
  if (crossing == points.size()) {
    out.saturated = true;
    out.s_threshold = -1.0;
    out.tau = 1.0;
    return out;
  }
  double hi = points[crossing - 1];  // violated
  double lo = points[crossing];      // not violated
  while (hi - lo > opts.bisection_tol) {
    const double mid = 0.5 * (hi + lo);
    if (evaluate(expr, table, mid).violated(opts.relative_tol))
      hi = mid;
    else
      lo = mid;
  }
  out.s_threshold = 0.5 * (hi + lo);
  out.tau = 0.5 * (1.0 - out.s_threshold);
  return out;
}

NcdResult ncd(const CriterionExpr& expr, const PhotonNumberDistribution& p, const ModeSpec& modes,
              const NcdOptions& opts) {
  const MomentTable table(p, modes);
  return ncd(expr, table, opts);
}

std::vector<double> bootstrap_tau_stddev(const std::vector<CriterionExpr>& exprs, int replicates,
                                         const std::function<PhotonNumberDistribution(int)>& make_field,
                                         const ModeSpec& modes, const NcdOptions& opts) {
  if (replicates < 2) throw ArgumentError("bootstrap needs at least two replicates");
  std::vector<std::vector<double>> taus(static_cast<std::size_t>(replicates));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < replicates; ++r) {
    try {
      const MomentTable table(make_field(r), modes);
      auto& row = taus[static_cast<std::size_t>(r)];
      for (const auto& e : exprs) row.push_back(ncd(e, table, opts).tau);
    } catch (...) {
#pragma omp critical(nckit_bootstrap_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<double> sd(exprs.size());
  for (std::size_t c = 0; c < exprs.size(); ++c) {
    double mean = 0.0;
    for (const auto& row : taus) mean += row[c];
    mean /= replicates;
    double var = 0.0;
    for (const auto& row : taus) var += (row[c] - mean) * (row[c] - mean);
    sd[c] = std::sqrt(var / (replicates - 1));
  }
  return sd;
}

}  // namespace nckit
