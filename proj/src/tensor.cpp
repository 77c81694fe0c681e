#include "nckit/tensor.hpp"

#include <numeric>

#include "nckit/error.hpp"

namespace nckit {
namespace {

std::size_t element_count(const MultiIndex& extents) {
  std::size_t n = 1;
  for (int e : extents) {
    if (e <= 0) throw ArgumentError("tensor extents must be positive");
    n *= static_cast<std::size_t>(e);
  }
  return n;
}

}  // namespace

Tensor::Tensor(MultiIndex extents, double fill)
    : extents_(std::move(extents)), data_(element_count(extents_), fill) {}

Tensor::Tensor(MultiIndex extents, std::vector<double> data)
    : extents_(std::move(extents)), data_(std::move(data)) {
  if (data_.size() != element_count(extents_))
    throw ArgumentError("tensor data size does not match extents");
}

bool Tensor::contains(const MultiIndex& index) const {
  if (index.size() != extents_.size()) return false;
  for (std::size_t i = 0; i < index.size(); ++i)
    if (index[i] < 0 || index[i] >= extents_[i]) return false;
  return true;
}

std::size_t Tensor::offset(const MultiIndex& index) const {
  if (!contains(index)) throw ArgumentError("index outside tensor extents");
  std::size_t off = 0;
  for (std::size_t i = 0; i < index.size(); ++i)
    off = off * static_cast<std::size_t>(extents_[i]) + static_cast<std::size_t>(index[i]);
  return off;
}

MultiIndex Tensor::index_of(std::size_t offset) const {
  MultiIndex idx(extents_.size());
  for (std::size_t i = extents_.size(); i-- > 0;) {
    const auto e = static_cast<std::size_t>(extents_[i]);
    idx[i] = static_cast<int>(offset % e);
    offset /= e;
  }
  return idx;
}

double Tensor::sum() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }

AxisSplit split_at(const MultiIndex& extents, std::size_t axis) {
  if (axis >= extents.size()) throw ArgumentError("axis out of range");
  AxisSplit s{1, static_cast<std::size_t>(extents[axis]), 1};
  for (std::size_t i = 0; i < axis; ++i) s.outer *= static_cast<std::size_t>(extents[i]);
  for (std::size_t i = axis + 1; i < extents.size(); ++i)
    s.inner *= static_cast<std::size_t>(extents[i]);
  return s;
}

}  // namespace nckit
