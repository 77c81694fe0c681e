#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nckit/field.hpp"
#include "nckit/kernels.hpp"

namespace nckit {

struct ChannelConfig {
  double eta = 1.0;
  double dark = 0.0;
  /// Largest reported count; larger counts are clipped onto it.
  std::optional<int> saturation;
};

/// Per-channel response matrices T_j(c, n) for a given photon-number box.
/// Without saturation the outcome range is extended until the dark-count
/// tail beyond it is below 1e-16; the last row then collects the remainder so
/// that every column sums to one.
class DetectionModel {
 public:
  DetectionModel() = default;
  DetectionModel(std::vector<ChannelConfig> channels, MultiIndex photon_cutoffs);

  int dims() const { return static_cast<int>(channels_.size()); }
  const std::vector<ChannelConfig>& channels() const { return channels_; }
  const MultiIndex& photon_cutoffs() const { return photon_cutoffs_; }
  MultiIndex outcome_cutoffs() const;
  const Matrix& matrix(int channel) const { return matrices_.at(static_cast<std::size_t>(channel)); }

 private:
  std::vector<ChannelConfig> channels_;
  MultiIndex photon_cutoffs_;
  std::vector<Matrix> matrices_;
};

DetectionModel build_detection(const std::vector<ChannelConfig>& channels, const MultiIndex& photon_cutoffs);

/// Single-channel response matrix: binomial loss, Poisson dark counts,
/// clip at the saturation count.
Matrix detection_matrix(const ChannelConfig& channel, int photon_cutoff);

/// f_th(c) = sum_n T(c, n) p(n), with outcome cutoffs from the model.
PhotocountHistogram forward(const PhotonNumberDistribution& p, const DetectionModel& model);

struct EmOptions {
  /// Stop when the largest change of any p(n) falls below this.
  double tol = 1e-9;
  long max_iter = 100000;
  /// Starting point; uniform over the photon box when empty.
  std::optional<Tensor> init;
};

struct EmResult {
  PhotonNumberDistribution p;
  long iterations = 0;
  bool converged = false;
  double log_likelihood = 0.0;
  /// Log-likelihood sum_c f(c) ln f_th(c) before each update and after the
  /// last one.
  std::vector<double> likelihood_trace;
  /// Largest column-mass deficit over the observed outcome range before
  /// renormalization; nonzero means the response was conditioned on the
  /// observed range.
  double column_deficit = 0.0;
};

/// Expectation-maximization deconvolution
///   p <- p * T^T (f / T p)
/// with T restricted (and column-renormalized) to the histogram's outcome box.
/// Throws ModelSupportError if an observed outcome has zero predicted
/// probability.
EmResult em_reconstruct(const PhotocountHistogram& f, const DetectionModel& model, const EmOptions& opts = {});

/// Multinomial resamples of size total_counts; replicate r uses RNG stream r.
std::vector<PhotocountHistogram> bootstrap_resample(const PhotocountHistogram& f, int replicates, std::uint64_t seed);
PhotocountHistogram bootstrap_replicate(const PhotocountHistogram& f, int replicate, std::uint64_t seed);

}  // namespace nckit
