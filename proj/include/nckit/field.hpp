#pragma once

#include <optional>
#include <set>
#include <vector>

#include "nckit/multi_index.hpp"
#include "nckit/tensor.hpp"

namespace nckit {

/// Joint photon-number distribution p(n) on a finite box of cutoffs
/// (exclusive upper bounds). Probability beyond the box is recorded in
/// tail_mass.
class PhotonNumberDistribution {
 public:
  PhotonNumberDistribution() = default;
  PhotonNumberDistribution(Tensor probabilities, double tail_mass = 0.0);

  int dims() const { return static_cast<int>(table_.rank()); }
  const MultiIndex& cutoffs() const { return table_.extents(); }
  const Tensor& table() const { return table_; }
  std::span<const double> data() const { return table_.data(); }
  double tail_mass() const { return tail_mass_; }

  /// p(n), or 0 when n lies outside the cutoffs.
  double at(const MultiIndex& n) const;
  bool contains(const MultiIndex& n) const { return table_.contains(n); }
  double stored_mass() const { return table_.sum(); }
  /// Marginal mean and standard deviation of the photon number in `dim`.
  double mean(int dim) const;
  double stddev(int dim) const;

 private:
  Tensor table_;
  double tail_mass_ = 0.0;
};

/// Relative photocount frequencies f(c) together with the number of frames
/// they were accumulated from.
class PhotocountHistogram {
 public:
  PhotocountHistogram() = default;
  PhotocountHistogram(Tensor frequencies, std::optional<long long> total_counts);

  int dims() const { return static_cast<int>(table_.rank()); }
  const MultiIndex& cutoffs() const { return table_.extents(); }
  const Tensor& table() const { return table_; }
  std::span<const double> data() const { return table_.data(); }
  std::optional<long long> total_counts() const { return total_counts_; }

  /// The frequencies read as a photon-number distribution (identity detector).
  PhotonNumberDistribution as_distribution() const;

 private:
  Tensor table_;
  std::optional<long long> total_counts_;
};

/// Effective number of modes per field dimension, used by the s-ordering
/// transforms. Real-valued.
class ModeSpec {
 public:
  ModeSpec() = default;
  explicit ModeSpec(std::vector<double> modes);
  static ModeSpec uniform(int dims, double modes);

  int dims() const { return static_cast<int>(modes_.size()); }
  double operator[](std::size_t dim) const { return modes_[dim]; }
  const std::vector<double>& values() const { return modes_; }
  ModeSpec restricted(const std::vector<int>& keep) const;

 private:
  std::vector<double> modes_;
};

/// Operator-ordering parameter s in [-1, 1]; s = 1 is normal ordering.
class Ordering {
 public:
  explicit Ordering(double s);
  static Ordering normal() { return Ordering(1.0); }
  double value() const { return s_; }
  /// Mean added noise photons per mode, (1 - s) / 2.
  double noise() const { return 0.5 * (1.0 - s_); }
  bool is_normal() const { return s_ == 1.0; }

 private:
  double s_;
};

/// Sums p over every dimension not in `keep` (0-based). The result keeps the
/// retained dimensions in ascending order; tail_mass is carried over.
PhotonNumberDistribution marginalize(const PhotonNumberDistribution& p,
                                     const std::set<int>& keep);

/// Rescales p so that stored mass + tail_mass = 1. Entries with
/// |p| < 1e-15 that are negative are clipped to 0 first.
PhotonNumberDistribution normalize(const PhotonNumberDistribution& p);

/// Half the L1 distance between two tables of the same shape.
double total_variation(const Tensor& a, const Tensor& b);

}  // namespace nckit
