#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "nckit/field.hpp"
#include "nckit/multi_index.hpp"

namespace nckit {

/// Reference to one mixed moment <W_W^{i_W}>_{p_p(i_p)}: dimensions flagged in
/// the probability mask carry a photon-number index, the rest an intensity
/// power. A zero mask gives a pure intensity moment; a full mask a (marginal)
/// probability.
class MomentAtom {
 public:
  MomentAtom() = default;
  MomentAtom(MultiIndex values, std::uint32_t probability_mask);
  static MomentAtom intensity(MultiIndex powers) { return MomentAtom(std::move(powers), 0); }
  static MomentAtom probability(MultiIndex index);

  std::size_t dims() const { return values_.size(); }
  const MultiIndex& values() const { return values_; }
  std::uint32_t probability_mask() const { return mask_; }
  bool is_probability_dim(std::size_t d) const { return (mask_ >> d) & 1u; }
  bool pure_intensity() const { return mask_ == 0; }

  /// "W^{120}", "p(1,2,0)" or "W^{12.}p(..3)" for mixed atoms.
  std::string label() const;

  friend auto operator<=>(const MomentAtom&, const MomentAtom&) = default;
  friend bool operator==(const MomentAtom&, const MomentAtom&) = default;

 private:
  MultiIndex values_;
  std::uint32_t mask_ = 0;
};

struct MomentValue {
  double value = 0.0;
  /// A probability index lay outside the stored cutoffs; value is 0.
  bool outside_cutoff = false;
  /// Bound on the contribution lost by truncating the probability transform.
  double truncation_bound = 0.0;
};

/// <W^i> = sum_n prod_j n_j!/(n_j - i_j)! p(n).
double factorial_moment(const PhotonNumberDistribution& p, const MultiIndex& i);

/// Normally ordered mixed moment; 0 when the probability index is outside the
/// cutoffs.
double mixed_moment(const PhotonNumberDistribution& p, const MomentAtom& atom);

/// s-ordered mixed moment computed from scratch (no caching).
MomentValue s_ordered_mixed_moment(const PhotonNumberDistribution& p, const ModeSpec& modes,
                                   const MomentAtom& atom, double s);

/// Memoizing evaluator bound to one distribution and mode specification.
/// Safe for concurrent use.
class MomentTable {
 public:
  MomentTable(PhotonNumberDistribution p, ModeSpec modes);

  const PhotonNumberDistribution& distribution() const { return p_; }
  const ModeSpec& modes() const { return modes_; }

  MomentValue get(const MomentAtom& atom, double s = 1.0) const;
  std::size_t cached_values() const;

 private:
  using PartialKey = std::tuple<double, std::uint32_t, MultiIndex>;

  std::shared_ptr<const Tensor> transformed(std::uint32_t mask, double s) const;
  std::shared_ptr<const Tensor> partial(const MomentAtom& atom, double s) const;

  PhotonNumberDistribution p_;
  ModeSpec modes_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<double, MomentAtom>, MomentValue> values_;
  mutable std::map<std::pair<double, std::uint32_t>, std::shared_ptr<const Tensor>> transformed_;
  mutable std::map<PartialKey, std::shared_ptr<const Tensor>> partials_;
  mutable std::atomic<bool> warned_truncation_{false};
  mutable std::atomic<bool> warned_outside_{false};
};

}  // namespace nckit
