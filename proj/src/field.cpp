#include "nckit/field.hpp"

#include <cmath>

#include "nckit/error.hpp"
#include "nckit/kernels.hpp"

namespace nckit {

PhotonNumberDistribution::PhotonNumberDistribution(Tensor probabilities, double tail_mass)
    : table_(std::move(probabilities)), tail_mass_(tail_mass) {
  if (table_.rank() == 0) throw ArgumentError("distribution needs at least one dimension");
  if (!(tail_mass_ >= 0.0) || !std::isfinite(tail_mass_))
    throw ArgumentError("tail_mass must be finite and nonnegative");
}

double PhotonNumberDistribution::at(const MultiIndex& n) const {
  return table_.contains(n) ? table_.at(n) : 0.0;
}

double PhotonNumberDistribution::mean(int dim) const {
  std::vector<double> w(static_cast<std::size_t>(cutoffs()[dim]));
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = static_cast<double>(k);
  return kernels::contract_axis_scalar(table_, dim, w);
}

double PhotonNumberDistribution::stddev(int dim) const {
  std::vector<double> w(static_cast<std::size_t>(cutoffs()[dim]));
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = static_cast<double>(k * k);
  const double m = mean(dim);
  const double second = kernels::contract_axis_scalar(table_, dim, w);
  return std::sqrt(std::max(0.0, second - m * m));
}

PhotocountHistogram::PhotocountHistogram(Tensor frequencies, std::optional<long long> total_counts)
    : table_(std::move(frequencies)), total_counts_(total_counts) {
  if (table_.rank() == 0) throw ArgumentError("histogram needs at least one dimension");
  for (double f : table_.data())
    if (!(f >= 0.0)) throw ArgumentError("histogram frequencies must be nonnegative");
  if (total_counts_ && *total_counts_ <= 0)
    throw ArgumentError("histogram total_counts must be positive");
}

PhotonNumberDistribution PhotocountHistogram::as_distribution() const {
  return PhotonNumberDistribution(table_, 0.0);
}

ModeSpec::ModeSpec(std::vector<double> modes) : modes_(std::move(modes)) {
  for (double m : modes_)
    if (!(m > 0.0) || !std::isfinite(m)) throw ArgumentError("mode numbers must be positive");
}

ModeSpec ModeSpec::uniform(int dims, double modes) {
  return ModeSpec(std::vector<double>(static_cast<std::size_t>(dims), modes));
}

ModeSpec ModeSpec::restricted(const std::vector<int>& keep) const {
  std::vector<double> out;
  for (int d : keep) out.push_back(modes_.at(static_cast<std::size_t>(d)));
  return ModeSpec(std::move(out));
}

Ordering::Ordering(double s) : s_(s) {
  if (!(s >= -1.0 && s <= 1.0)) throw ArgumentError("ordering parameter must lie in [-1, 1]");
}

PhotonNumberDistribution marginalize(const PhotonNumberDistribution& p,
                                     const std::set<int>& keep) {
  if (keep.empty()) throw ArgumentError("marginalize: keep set is empty");
  for (int d : keep)
    if (d < 0 || d >= p.dims()) throw ArgumentError("marginalize: dimension out of range");
  Tensor t = p.table();
  for (int d = p.dims() - 1; d >= 0; --d) {
    if (keep.count(d)) continue;
    t = kernels::sum_axis(t, static_cast<std::size_t>(d));
  }
  return PhotonNumberDistribution(std::move(t), p.tail_mass());
}

PhotonNumberDistribution normalize(const PhotonNumberDistribution& p) {
  Tensor t = p.table();
  for (double& x : t.data()) {
    if (x < 0.0) {
      if (x < -1e-15) throw ArgumentError("normalize: probability below -1e-15");
      x = 0.0;
    }
  }
  const double mass = t.sum();
  if (!(mass > 0.0)) throw DegenerateInputError("normalize: table has no positive mass");
  const double target = 1.0 - p.tail_mass();
  if (!(target > 0.0)) throw DegenerateInputError("normalize: tail_mass leaves no stored mass");
  const double scale = target / mass;
  for (double& x : t.data()) x *= scale;
  return PhotonNumberDistribution(std::move(t), p.tail_mass());
}

double total_variation(const Tensor& a, const Tensor& b) {
  if (a.extents() != b.extents()) throw ArgumentError("total_variation: shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return 0.5 * acc;
}

}  // namespace nckit
