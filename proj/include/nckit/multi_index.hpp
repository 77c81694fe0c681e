#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace nckit {

/// Integer vector over field dimensions: photon numbers, moment powers and
/// table cutoffs all use it. Entries may go negative in intermediate
/// arithmetic (e.g. 2n - m); callers validate with nonnegative().
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dims, int fill = 0) : v_(dims, fill) {}
  MultiIndex(std::initializer_list<int> values) : v_(values) {}
  explicit MultiIndex(std::vector<int> values) : v_(std::move(values)) {}

  /// The vector with `value` at `dim` and zeros elsewhere.
  static MultiIndex unit(std::size_t dims, std::size_t dim, int value = 1);

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  int operator[](std::size_t i) const { return v_[i]; }
  int& operator[](std::size_t i) { return v_[i]; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<int>& values() const { return v_; }

  int total() const;
  bool nonnegative() const;
  /// Entrywise a <= b.
  bool dominated_by(const MultiIndex& other) const;
  /// Product of entry factorials, as a double.
  double factorial() const;
  double log_factorial() const;

  /// Compact label: "120" when every entry is a single digit, "1,12,0" otherwise.
  std::string label() const;

  MultiIndex& operator+=(const MultiIndex& o);
  MultiIndex& operator-=(const MultiIndex& o);

  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
  friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }
  friend MultiIndex operator*(int k, MultiIndex a) {
    for (auto& x : a.v_) x *= k;
    return a;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> v_;
};

}  // namespace nckit
