#include "nckit/moments.hpp"

#include <bit>
#include <cmath>
#include <mutex>

#include "nckit/diagnostics.hpp"
#include "nckit/error.hpp"
#include "nckit/kernels.hpp"
#include "nckit/ordering.hpp"
#include "nckit/special.hpp"

namespace nckit {
namespace {

constexpr double kTruncationWarn = 1e-8;
constexpr std::size_t kTransformedCacheBytes = std::size_t{256} << 20;

std::uint32_t full_mask(std::size_t n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

void check_atom(const PhotonNumberDistribution& p, const MomentAtom& atom) {
  if (atom.dims() != static_cast<std::size_t>(p.dims()))
    throw ArgumentError("moment atom length does not match field dimension");
}

void check_modes(const PhotonNumberDistribution& p, const ModeSpec& modes) {
  if (modes.dims() != p.dims()) throw ArgumentError("mode specification does not match field dimension");
}

// p with the probability transform applied along every dimension in mask.
Tensor transform_dims(const PhotonNumberDistribution& p, const ModeSpec& modes, std::uint32_t mask,
                      double s) {
  Tensor t = p.table();
  if (s == 1.0) return t;
  for (std::size_t d = 0; d < t.rank(); ++d) {
    if (!((mask >> d) & 1u)) continue;
    const int k = t.extent(d);
    t = kernels::apply_axis(t, d, probability_transform_matrix(k, k, s, modes[d]), Summation::plain);
  }
  return t;
}

// Contracts the intensity dimensions of t with s-ordered falling-factorial
// weights; the probability dimensions survive in order.
Tensor contract_intensity_dims(const Tensor& t, const ModeSpec& modes, const MomentAtom& atom, double s) {
  std::vector<std::optional<std::vector<double>>> w(t.rank());
  for (std::size_t d = 0; d < t.rank(); ++d) {
    if (atom.is_probability_dim(d)) continue;
    w[d] = ordered_moment_weights(atom.values()[d], t.extent(d), s, modes[d]);
  }
  return kernels::contract_partial(t, w);
}

MomentValue read_partial(const Tensor& partial, const PhotonNumberDistribution& p, const MomentAtom& atom,
                         double s) {
  MomentValue out;
  std::vector<int> idx;
  for (std::size_t d = 0; d < atom.dims(); ++d)
    if (atom.is_probability_dim(d)) idx.push_back(atom.values()[d]);
  const MultiIndex index(std::move(idx));
  if (!partial.contains(index)) {
    out.outside_cutoff = true;
    return out;
  }
  out.value = partial.at(index);
  if (atom.probability_mask() != 0 && s < 1.0) out.truncation_bound = p.tail_mass();
  return out;
}

MultiIndex intensity_key(const MomentAtom& atom) {
  MultiIndex k = atom.values();
  for (std::size_t d = 0; d < k.size(); ++d)
    if (atom.is_probability_dim(d)) k[d] = -1;
  return k;
}

}  // namespace

MomentAtom::MomentAtom(MultiIndex values, std::uint32_t probability_mask)
    : values_(std::move(values)), mask_(probability_mask) {
  if (values_.empty()) throw ArgumentError("moment atom needs at least one dimension");
  if (values_.size() > 32) throw ArgumentError("moment atoms support at most 32 dimensions");
  if (!values_.nonnegative()) throw ArgumentError("moment atom entries must be nonnegative");
  if (values_.size() < 32 && (mask_ >> values_.size()) != 0)
    throw ArgumentError("probability mask names a dimension beyond the atom");
}

MomentAtom MomentAtom::probability(MultiIndex index) {
  const std::size_t n = index.size();
  const std::uint32_t mask = n >= 32 ? ~0u : ((1u << n) - 1u);
  return MomentAtom(std::move(index), mask);
}

std::string MomentAtom::label() const {
  const std::size_t n = values_.size();
  const auto all = n >= 32 ? ~0u : ((1u << n) - 1u);
  if (mask_ == 0) return "W^{" + values_.label() + "}";
  if (mask_ == all) return "p(" + values_.label() + ")";
  std::string w, p;
  for (std::size_t d = 0; d < n; ++d) {
    const std::string v = std::to_string(values_[d]);
    w += is_probability_dim(d) ? "." : v;
    p += is_probability_dim(d) ? v : ".";
    if (d + 1 < n) {
      w += ',';
      p += ',';
    }
  }
  return "W^{" + w + "}p(" + p + ")";
}

double factorial_moment(const PhotonNumberDistribution& p, const MultiIndex& i) {
  return mixed_moment(p, MomentAtom::intensity(i));
}

double mixed_moment(const PhotonNumberDistribution& p, const MomentAtom& atom) {
  return s_ordered_mixed_moment(p, ModeSpec::uniform(p.dims(), 1.0), atom, 1.0).value;
}

MomentValue s_ordered_mixed_moment(const PhotonNumberDistribution& p, const ModeSpec& modes,
                                   const MomentAtom& atom, double s) {
  const MomentTable table(p, modes);
  return table.get(atom, s);
}

MomentTable::MomentTable(PhotonNumberDistribution p, ModeSpec modes) : p_(std::move(p)), modes_(std::move(modes)) {
  check_modes(p_, modes_);
}

std::size_t MomentTable::cached_values() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

std::shared_ptr<const Tensor> MomentTable::transformed(std::uint32_t mask, double s) const {
  const auto key = std::make_pair(s, s == 1.0 ? 0u : mask);
  {
    std::shared_lock lock(mutex_);
    if (auto it = transformed_.find(key); it != transformed_.end()) return it->second;
  }
  auto t = std::make_shared<const Tensor>(transform_dims(p_, modes_, key.second, s));
  std::unique_lock lock(mutex_);
  if (key.first != 1.0) {
    std::size_t bytes = t->size() * sizeof(double);
    for (const auto& [k, v] : transformed_) bytes += v->size() * sizeof(double);
    if (bytes > kTransformedCacheBytes) std::erase_if(transformed_, [](const auto& e) { return e.first.first != 1.0; });
  }
  return transformed_.emplace(key, std::move(t)).first->second;
}

std::shared_ptr<const Tensor> MomentTable::partial(const MomentAtom& atom, double s) const {
  if (atom.probability_mask() == full_mask(atom.dims())) return transformed(atom.probability_mask(), s);
  PartialKey key{s, atom.probability_mask(), intensity_key(atom)};
  {
    std::shared_lock lock(mutex_);
    if (auto it = partials_.find(key); it != partials_.end()) return it->second;
  }
  std::shared_ptr<const Tensor> t;
  if (atom.pure_intensity() && s != 1.0) {
    // <W^i>_s = sum_{i' <= i} prod_j S_W(i_j, i'_j) <W^i'>, reusing the
    // normally ordered moments.
    const MultiIndex& i = atom.values();
    MultiIndex ip(i.size());
    double acc = 0.0;
    while (true) {
      double c = 1.0;
      for (std::size_t d = 0; d < i.size() && c != 0.0; ++d)
        c *= intensity_transform_coefficient(i[d], ip[d], s, modes_[d]);
      if (c != 0.0) acc += c * (*partial(MomentAtom::intensity(ip), 1.0))[0];
      std::size_t d = 0;
      while (d < i.size() && ip[d] == i[d]) ip[d++] = 0;
      if (d == i.size()) break;
      ++ip[d];
    }
    t = std::make_shared<const Tensor>(MultiIndex{}, std::vector<double>{acc});
  } else if (atom.pure_intensity() || s == 1.0) {
    t = std::make_shared<const Tensor>(
        contract_intensity_dims(*transformed(atom.probability_mask(), s), modes_, atom, s));
  } else {
    // Mixed atom: the per-axis operations commute, so contract the intensity
    // axes first and transform only what survives.
    Tensor c = contract_intensity_dims(p_.table(), modes_, atom, s);
    std::size_t axis = 0;
    for (std::size_t d = 0; d < atom.dims(); ++d) {
      if (!atom.is_probability_dim(d)) continue;
      const int k = c.extent(axis);
      c = kernels::apply_axis(c, axis, probability_transform_matrix(k, k, s, modes_[d]), Summation::plain);
      ++axis;
    }
    t = std::make_shared<const Tensor>(std::move(c));
  }
  std::unique_lock lock(mutex_);
  return partials_.emplace(std::move(key), std::move(t)).first->second;
}

MomentValue MomentTable::get(const MomentAtom& atom, double s) const {
  check_atom(p_, atom);
  static_cast<void>(Ordering(s));
  const auto key = std::make_pair(s, atom);
  {
    std::shared_lock lock(mutex_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }
  const MomentValue v = read_partial(*partial(atom, s), p_, atom, s);
  if (v.outside_cutoff && !warned_outside_.exchange(true))
    warn("moment atom " + atom.label() + " lies outside the stored cutoffs; using 0");
  if (v.truncation_bound > kTruncationWarn && !warned_truncation_.exchange(true))
    warn("probability transform truncation bound " + std::to_string(v.truncation_bound) +
         " exceeds 1e-8; raise the cutoffs");
  std::unique_lock lock(mutex_);
  values_.emplace(key, v);
  return v;
}

}  // namespace nckit
