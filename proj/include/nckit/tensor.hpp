#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nckit/multi_index.hpp"

namespace nckit {

/// Dense row-major N-dimensional array of doubles; the last dimension is
/// contiguous.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(MultiIndex extents, double fill = 0.0);
  Tensor(MultiIndex extents, std::vector<double> data);

  std::size_t rank() const { return extents_.size(); }
  const MultiIndex& extents() const { return extents_; }
  int extent(std::size_t axis) const { return extents_[axis]; }
  std::size_t size() const { return data_.size(); }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }
  std::vector<double>& storage() { return data_; }
  const std::vector<double>& storage() const { return data_; }

  bool contains(const MultiIndex& index) const;
  std::size_t offset(const MultiIndex& index) const;
  /// Inverse of offset().
  MultiIndex index_of(std::size_t offset) const;

  double operator[](std::size_t flat) const { return data_[flat]; }
  double& operator[](std::size_t flat) { return data_[flat]; }
  double at(const MultiIndex& index) const { return data_[offset(index)]; }
  double& at(const MultiIndex& index) { return data_[offset(index)]; }

  double sum() const;

 private:
  MultiIndex extents_;
  std::vector<double> data_;
};

/// Product of the extents before `axis`, the extent at `axis`, and the
/// product after it; the usual (outer, n, inner) view for axis-wise kernels.
struct AxisSplit {
  std::size_t outer;
  std::size_t length;
  std::size_t inner;
};
AxisSplit split_at(const MultiIndex& extents, std::size_t axis);

}  // namespace nckit
