#pragma once

#include <cstdint>
#include <vector>

#include "nckit/field.hpp"

namespace nckit {

/// Photon pairs shared by dimensions a and b (0-based): both receive the
/// same photon number, distributed as Mandel-Rice(B, M).
struct PairComponent {
  int a = 0;
  int b = 1;
  double mean = 0.0;
  double modes = 1.0;
};

/// Independent Mandel-Rice noise added to one dimension.
struct NoiseComponent {
  int dim = 0;
  double mean = 0.0;
  double modes = 1.0;
};

struct GaussianFieldSpec {
  std::vector<PairComponent> pairs;
  std::vector<NoiseComponent> noise;
  MultiIndex cutoffs;
};

/// p(n) = Gamma(n+M)/(n! Gamma(M)) (B/M)^n (1+B/M)^-(n+M) for n < cutoff; the
/// remainder goes to tail_mass. Warns when tail_mass exceeds 1e-6.
PhotonNumberDistribution mandel_rice(double mean, double modes, int cutoff);

/// Poisson(mean) on n < cutoff, remainder in tail_mass.
PhotonNumberDistribution poisson(double mean, int cutoff);

/// Convolves all components into a joint table with the spec's cutoffs.
/// Probability pushed beyond the cutoffs is recorded in tail_mass.
PhotonNumberDistribution compose_field(const GaussianFieldSpec& spec);

/// Two twin beams sharing dimension 3 plus per-dimension noise: pairs (1,3)
/// with 6.15 and (2,3) with 5.95 mean pairs, noise means 0.11, 0.07, 0.02.
/// Every component gets `pair_modes` modes.
GaussianFieldSpec twin_beam_3d_spec(double pair_modes, const MultiIndex& cutoffs);

/// Effective mode numbers per dimension for the twin-beam field: dimension 3
/// carries the modes of both pair components.
ModeSpec twin_beam_3d_modes(double pair_modes);

/// Smallest per-dimension cutoffs for which every marginal of the spec's
/// field leaves at most `tail` probability beyond the cutoff (capped at
/// `max_cutoff`).
MultiIndex cutoffs_for_tail(const GaussianFieldSpec& spec, double tail, int max_cutoff = 400);

/// Multinomial sample of `total_counts` frames, returned as relative
/// frequencies. Deterministic in `seed`.
PhotocountHistogram sample_histogram(const PhotonNumberDistribution& p, long long total_counts, std::uint64_t seed);

}  // namespace nckit
