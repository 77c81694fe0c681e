#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace nckit {

/// Engine for replicate `stream` of a run seeded with `seed`; streams are
/// independent of each other and of thread scheduling.
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream = 0);

/// Multinomial draw of `trials` outcomes over the given probabilities
/// (normalized internally) by sequential conditional binomials.
std::vector<long long> sample_multinomial(std::span<const double> probs, long long trials, std::mt19937_64& rng);

}  // namespace nckit
