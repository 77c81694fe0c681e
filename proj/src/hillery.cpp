#include <algorithm>
#include <cmath>

#include "nckit/criteria.hpp"
#include "nckit/diagnostics.hpp"
#include "nckit/error.hpp"
#include "nckit/kernels.hpp"

namespace nckit {
namespace {

constexpr double kTailWarn = 1e-8;

}  // namespace

CriterionExpr build_hillery(HilleryParity parity, int dims, std::vector<int> keep) {
  if (dims <= 0) throw ArgumentError("Hillery criterion needs a positive dimension");
  if (keep.empty())
    for (int d = 0; d < dims; ++d) keep.push_back(d);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::string label;
  for (int d : keep) {
    if (d < 0 || d >= dims) throw ArgumentError("Hillery marginal dimension out of range");
    label += std::to_string(d + 1);
  }
  CriterionExpr e;
  e.family = parity == HilleryParity::even ? Family::hillery_even : Family::hillery_odd;
  e.id = std::string(parity == HilleryParity::even ? "H1" : "H2") +
         (static_cast<int>(keep.size()) == dims ? "" : "^{" + label + "}");
  e.indices = "dims=" + label;
  e.dims = dims;
  e.hillery_dims = std::move(keep);
  return e;
}

// With Q_s(x) the generating function of the s-ordered distribution,
//   H1 = Q_s(-1)/2,  H2 = (p_s(0) - Q_s(-1))/2,
// and both are closed-form contractions of the normally ordered table:
//   Q_s(-1) = prod_j (2-s)^(-M_j) sum_n p(n) prod_j (-s/(2-s))^(n_j)
//   p_s(0)  = prod_j (1+mu)^(-M_j) sum_n p(n) prod_j (mu/(1+mu))^(n_j)
// Dimensions outside the marginal get weight one.
Evaluation evaluate_hillery(HilleryParity parity, const PhotonNumberDistribution& p, const ModeSpec& modes,
                            const std::vector<int>& keep, double s) {
  static_cast<void>(Ordering(s));
  if (modes.dims() != p.dims()) throw ArgumentError("mode specification does not match field dimension");
  const double mu = 0.5 * (1.0 - s);
  const double x_parity = -s / (2.0 - s);
  const double x_vacuum = mu / (1.0 + mu);
  std::vector<std::vector<double>> w_parity(static_cast<std::size_t>(p.dims()));
  std::vector<std::vector<double>> w_vacuum(static_cast<std::size_t>(p.dims()));
  double pre_parity = 1.0, pre_vacuum = 1.0;
  for (int d : keep) {
    const auto k = static_cast<std::size_t>(p.cutoffs()[static_cast<std::size_t>(d)]);
    auto& a = w_parity[static_cast<std::size_t>(d)];
    auto& b = w_vacuum[static_cast<std::size_t>(d)];
    a.resize(k);
    b.resize(k);
    for (std::size_t n = 0; n < k; ++n) {
      a[n] = n == 0 ? 1.0 : a[n - 1] * x_parity;
      b[n] = n == 0 ? 1.0 : b[n - 1] * x_vacuum;
    }
    const double m = modes[static_cast<std::size_t>(d)];
    pre_parity *= std::pow(2.0 - s, -m);
    pre_vacuum *= std::pow(1.0 + mu, -m);
  }
  const double q = pre_parity * kernels::contract(p.table(), w_parity);
  Evaluation out;
  if (parity == HilleryParity::even) {
    out.value = 0.5 * q;
    out.scale = 0.5 * std::abs(q);
  } else {
    const double p0 = pre_vacuum * kernels::contract(p.table(), w_vacuum);
    out.value = 0.5 * (p0 - q);
    out.scale = 0.5 * (std::abs(p0) + std::abs(q));
  }
  out.truncation_bound = p.tail_mass();
  if (s == 1.0 && p.tail_mass() > kTailWarn)
    warn("Hillery criterion: tail mass " + std::to_string(p.tail_mass()) + " exceeds 1e-8");
  if (!std::isfinite(out.value)) throw NumericalError("Hillery criterion is not finite");
  return out;
}

}  // namespace nckit
