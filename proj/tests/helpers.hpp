#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "nckit/field.hpp"
#include "nckit/synth.hpp"

namespace nckit::fixtures {

inline Tensor outer(const std::vector<std::vector<double>>& factors) {
  std::vector<int> ext;
  for (const auto& f : factors) ext.push_back(static_cast<int>(f.size()));
  Tensor t(MultiIndex(ext), 1.0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const MultiIndex n = t.index_of(k);
    double v = 1.0;
    for (std::size_t d = 0; d < factors.size(); ++d) v *= factors[d][static_cast<std::size_t>(n[d])];
    t[k] = v;
  }
  return t;
}

inline std::vector<double> values(const PhotonNumberDistribution& p) {
  return std::vector<double>(p.data().begin(), p.data().end());
}

inline std::vector<double> thermal(double mean, int cutoff) { return values(mandel_rice(mean, 1.0, cutoff)); }
inline std::vector<double> poisson_values(double mean, int cutoff) { return values(poisson(mean, cutoff)); }

inline std::vector<double> delta(int n, int cutoff) {
  std::vector<double> v(static_cast<std::size_t>(cutoff), 0.0);
  v[static_cast<std::size_t>(n)] = 1.0;
  return v;
}

/// Ideal twin beam p(n, n) = Mandel-Rice(B, M)(n).
inline PhotonNumberDistribution twin_beam(double mean, double modes, int cutoff) {
  GaussianFieldSpec spec;
  spec.pairs = {{0, 1, mean, modes}};
  spec.cutoffs = MultiIndex{cutoff, cutoff};
  return compose_field(spec);
}

/// Mixture of products of Poisson and single-mode thermal factors, with
/// parameters kept small so that the stored table leaves a negligible tail.
inline PhotonNumberDistribution random_classical(std::mt19937_64& rng, int dims, int cutoff) {
  std::uniform_int_distribution<int> ncomp(1, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int components = ncomp(rng);
  std::vector<double> weights;
  for (int c = 0; c < components; ++c) weights.push_back(0.1 + u(rng));
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  Tensor total(MultiIndex(static_cast<std::size_t>(dims), cutoff), 0.0);
  double tail = 0.0;
  for (int c = 0; c < components; ++c) {
    std::vector<std::vector<double>> f;
    for (int d = 0; d < dims; ++d) {
      if (u(rng) < 0.5) {
        f.push_back(poisson_values(1.2 * u(rng), cutoff));
      } else {
        f.push_back(thermal(0.2 * u(rng), cutoff));
      }
    }
    const Tensor t = outer(f);
    double mass = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      total[k] += weights[static_cast<std::size_t>(c)] / wsum * t[k];
      mass += t[k];
    }
    tail += weights[static_cast<std::size_t>(c)] / wsum * std::max(0.0, 1.0 - mass);
  }
  return PhotonNumberDistribution(std::move(total), tail);
}

}  // namespace nckit::fixtures
