#include "nckit/multi_index.hpp"

#include <algorithm>
#include <cmath>

#include "nckit/error.hpp"

namespace nckit {

MultiIndex MultiIndex::unit(std::size_t dims, std::size_t dim, int value) {
  if (dim >= dims) throw ArgumentError("unit index dimension out of range");
  MultiIndex m(dims);
  m[dim] = value;
  return m;
}

int MultiIndex::total() const {
  int t = 0;
  for (int x : v_) t += x;
  return t;
}

bool MultiIndex::nonnegative() const {
  return std::all_of(v_.begin(), v_.end(), [](int x) { return x >= 0; });
}

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (v_[i] > other.v_[i]) return false;
  return true;
}

double MultiIndex::factorial() const {
  double acc = 1.0;
  for (int x : v_) {
    if (x < 0) throw ArgumentError("factorial of a negative entry");
    for (int k = 2; k <= x; ++k) acc *= k;
  }
  return acc;
}

double MultiIndex::log_factorial() const {
  double acc = 0.0;
  for (int x : v_) {
    if (x < 0) throw ArgumentError("factorial of a negative entry");
    acc += std::lgamma(static_cast<double>(x) + 1.0);
  }
  return acc;
}

std::string MultiIndex::label() const {
  const bool compact =
      std::all_of(v_.begin(), v_.end(), [](int x) { return x >= 0 && x <= 9; });
  std::string out;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += std::to_string(v_[i]);
  }
  return out;
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& o) {
  if (o.size() != size()) throw ArgumentError("multi-index length mismatch");
  for (std::size_t i = 0; i < size(); ++i) v_[i] += o.v_[i];
  return *this;
}

MultiIndex& MultiIndex::operator-=(const MultiIndex& o) {
  if (o.size() != size()) throw ArgumentError("multi-index length mismatch");
  for (std::size_t i = 0; i < size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

}  // namespace nckit
