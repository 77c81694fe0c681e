#include "nckit/sampling.hpp"

#include <numeric>

#include "nckit/error.hpp"

namespace nckit {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x6e636bu};
  return std::mt19937_64(seq);
}

std::vector<long long> sample_multinomial(std::span<const double> probs, long long trials, std::mt19937_64& rng) {
  if (trials < 0) throw ArgumentError("number of trials must be nonnegative");
  double remaining_mass = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ArgumentError("multinomial probabilities must be nonnegative");
    remaining_mass += p;
  }
  if (!(remaining_mass > 0.0)) throw DegenerateInputError("multinomial probabilities sum to zero");
  std::vector<long long> counts(probs.size(), 0);
  long long left = trials;
  for (std::size_t k = 0; k < probs.size() && left > 0; ++k) {
    if (probs[k] <= 0.0) continue;
    const double q = std::min(1.0, probs[k] / remaining_mass);
    const long long c = q >= 1.0 ? left : std::binomial_distribution<long long>(left, q)(rng);
    counts[k] = c;
    left -= c;
    remaining_mass -= probs[k];
    if (!(remaining_mass > 0.0)) remaining_mass = 0.0;
  }
  if (left > 0) {
    // Rounding left mass unassigned; it goes to the last positive bin.
    for (std::size_t k = probs.size(); k-- > 0;)
      if (probs[k] > 0.0) {
        counts[k] += left;
        break;
      }
  }
  return counts;
}

}  // namespace nckit
