#include "nckit/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nckit/error.hpp"
#include "nckit/kernels.hpp"

namespace nckit {
namespace {

template <class T>
struct Dense {
  std::vector<std::size_t> ext;
  std::vector<T> data;
};

// Per-axis series matrix V(w, n) = (2/(1-s)) e^{-2w/(1-s)} r^n L_n(4w/(1-s^2)).
template <class T>
std::vector<T> axis_matrix(const std::vector<double>& w, int cutoff, double s) {
  const T a = T(1) - T(s);
  const T r = (T(s) + T(1)) / (T(s) - T(1));
  const T x_scale = T(4) / ((T(1) - T(s)) * (T(1) + T(s)));
  std::vector<T> m(w.size() * static_cast<std::size_t>(cutoff));
  for (std::size_t g = 0; g < w.size(); ++g) {
    const T x = x_scale * T(w[g]);
    T prefactor = (T(2) / a) * std::exp(-T(2) * T(w[g]) / a);
    T l_prev = 0, l = 1, rn = 1;
    for (int n = 0; n < cutoff; ++n) {
      m[g * static_cast<std::size_t>(cutoff) + static_cast<std::size_t>(n)] = prefactor * rn * l;
      const T next = ((T(2 * n + 1) - x) * l - T(n) * l_prev) / T(n + 1);
      l_prev = l;
      l = next;
      rn *= r;
    }
  }
  return m;
}

// out[o, g, i] = sum_c m(g, c) t[o, c, i], Neumaier-compensated.
template <class T>
Dense<T> apply(const Dense<T>& t, std::size_t axis, const std::vector<T>& m, std::size_t rows) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t d = 0; d < axis; ++d) outer *= t.ext[d];
  for (std::size_t d = axis + 1; d < t.ext.size(); ++d) inner *= t.ext[d];
  const std::size_t len = t.ext[axis];
  Dense<T> out{t.ext, {}};
  out.ext[axis] = rows;
  out.data.assign(outer * rows * inner, T(0));
  std::vector<T> comp(inner);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t r = 0; r < rows; ++r) {
      T* row = out.data.data() + (o * rows + r) * inner;
      std::fill(comp.begin(), comp.end(), T(0));
      for (std::size_t c = 0; c < len; ++c) {
        const T coef = m[r * len + c];
        const T* src = t.data.data() + (o * len + c) * inner;
        for (std::size_t i = 0; i < inner; ++i) {
          const T v = coef * src[i];
          const T sum = row[i] + v;
          comp[i] += std::abs(row[i]) >= std::abs(v) ? (row[i] - sum) + v : (v - sum) + row[i];
          row[i] = sum;
        }
      }
      for (std::size_t i = 0; i < inner; ++i) row[i] += comp[i];
    }
  return out;
}

Matrix to_matrix(const std::vector<double>& m, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  out.data = m;
  return out;
}

}  // namespace

CutSpec parse_cut(const std::string& text, int dims) {
  if (dims <= 0) throw ArgumentError("cut needs a positive dimension count");
  CutSpec cut;
  cut.dim_variable.assign(static_cast<std::size_t>(dims), -1);
  cut.fixed.assign(static_cast<std::size_t>(dims), 0.0);
  if (text.empty()) {
    for (int d = 0; d < dims; ++d) {
      cut.dim_variable[static_cast<std::size_t>(d)] = d;
      cut.variables.push_back("W" + std::to_string(d + 1));
    }
    return cut;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  if (static_cast<int>(parts.size()) != dims)
    throw ArgumentError("cut '" + text + "' must have one entry per dimension (" + std::to_string(dims) + ")");
  for (int d = 0; d < dims; ++d) {
    const std::string& tok = parts[static_cast<std::size_t>(d)];
    if (tok.empty()) throw ArgumentError("empty entry in cut '" + text + "'");
    std::size_t used = 0;
    double value = 0.0;
    bool numeric = true;
    try {
      value = std::stod(tok, &used);
    } catch (const std::exception&) {
      numeric = false;
    }
    if (numeric && used == tok.size()) {
      if (!(value >= 0.0) || !std::isfinite(value)) throw ArgumentError("fixed intensity must be nonnegative");
      cut.fixed[static_cast<std::size_t>(d)] = value;
      continue;
    }
    auto it = std::find(cut.variables.begin(), cut.variables.end(), tok);
    if (it == cut.variables.end()) {
      cut.variables.push_back(tok);
      it = cut.variables.end() - 1;
    }
    cut.dim_variable[static_cast<std::size_t>(d)] = static_cast<int>(it - cut.variables.begin());
  }
  if (cut.variables.empty()) throw ArgumentError("cut '" + text + "' has no free variable");
  return cut;
}

std::vector<double> default_axis(const PhotonNumberDistribution& p, int dim, int points) {
  if (points < 2) throw ArgumentError("an axis needs at least two points");
  const double hi = std::max(1.0, p.mean(dim) + 8.0 * p.stddev(dim));
  std::vector<double> axis(static_cast<std::size_t>(points));
  for (int g = 0; g < points; ++g) axis[static_cast<std::size_t>(g)] = hi * g / (points - 1);
  return axis;
}

std::vector<std::vector<double>> default_axes(const PhotonNumberDistribution& p, const CutSpec& cut, int points) {
  std::vector<double> hi(cut.variables.size(), 0.0);
  for (int d = 0; d < p.dims(); ++d) {
    const int v = cut.dim_variable.at(static_cast<std::size_t>(d));
    if (v >= 0) hi[static_cast<std::size_t>(v)] = std::max(hi[static_cast<std::size_t>(v)], default_axis(p, d, 2)[1]);
  }
  std::vector<std::vector<double>> axes;
  for (double h : hi) {
    std::vector<double> axis(static_cast<std::size_t>(points));
    for (int g = 0; g < points; ++g) axis[static_cast<std::size_t>(g)] = h * g / (points - 1);
    axes.push_back(std::move(axis));
  }
  return axes;
}

IntensityGrid quasi_distribution(const PhotonNumberDistribution& p, double s, const CutSpec& cut,
                                 const std::vector<std::vector<double>>& axes, const QuasiOptions& opts) {
  if (!(s > -1.0 && s < 1.0)) throw ArgumentError("quasi-distribution needs -1 < s < 1");
  const int N = p.dims();
  if (N == 0) throw ArgumentError("quasi-distribution needs at least one dimension");
  if (static_cast<int>(cut.dim_variable.size()) != N || cut.fixed.size() != cut.dim_variable.size())
    throw ArgumentError("cut does not match the field's dimensions");
  if (axes.size() != cut.variables.size()) throw ArgumentError("one axis per cut variable required");
  for (const auto& axis : axes) {
    if (axis.empty()) throw ArgumentError("empty intensity axis");
    for (std::size_t g = 0; g < axis.size(); ++g)
      if (!(axis[g] >= 0.0) || (g > 0 && !(axis[g] > axis[g - 1])))
        throw ArgumentError("intensity axes must be nonnegative and strictly increasing");
  }

  // Sample points per field dimension.
  std::vector<std::vector<double>> points(static_cast<std::size_t>(N));
  for (int d = 0; d < N; ++d) {
    const int v = cut.dim_variable[static_cast<std::size_t>(d)];
    points[static_cast<std::size_t>(d)] =
        v >= 0 ? axes[static_cast<std::size_t>(v)] : std::vector<double>{cut.fixed[static_cast<std::size_t>(d)]};
  }

  // Overflow guard on the per-axis matrices and their product.
  std::vector<std::vector<double>> v_double(static_cast<std::size_t>(N));
  std::vector<double> v_absmax(static_cast<std::size_t>(N), 0.0);
  double log_max = 0.0;
  for (int d = 0; d < N; ++d) {
    const auto sd = static_cast<std::size_t>(d);
    const auto mld = axis_matrix<long double>(points[sd], p.cutoffs()[sd], s);
    long double mx = 0;
    for (long double x : mld) mx = std::max(mx, std::abs(x));
    if (!std::isfinite(mx) || mx > static_cast<long double>(opts.overflow_limit))
      throw NumericalError("quasi-distribution series terms exceed " + std::to_string(opts.overflow_limit) +
                           " in dimension " + std::to_string(d + 1) +
                           "; lower the cutoff, shrink the intensity range or move s away from +-1");
    log_max += std::log(static_cast<double>(std::max(mx, static_cast<long double>(1e-300))));
    v_absmax[sd] = static_cast<double>(mx);
    v_double[sd].assign(mld.begin(), mld.end());
  }
  if (log_max > std::log(opts.overflow_limit))
    throw NumericalError("quasi-distribution series terms could exceed the overflow limit; lower the cutoff, "
                         "shrink the intensity range or move s away from +-1");

  // Rectangle over per-dimension points (last axis first), then the magnitude grid.
  Tensor rect;
  Tensor magnitude;
  {
    Tensor absp = p.table();
    for (double& x : absp.data()) x = std::abs(x);
    Tensor mag = absp;
    if (opts.extended_precision) {
      Dense<long double> cur;
      for (int e : p.cutoffs().values()) cur.ext.push_back(static_cast<std::size_t>(e));
      cur.data.assign(p.data().begin(), p.data().end());
      for (int d = N; d-- > 0;) {
        const auto sd = static_cast<std::size_t>(d);
        cur = apply(cur, sd, axis_matrix<long double>(points[sd], p.cutoffs()[sd], s), points[sd].size());
      }
      MultiIndex ext(cur.ext.size());
      for (std::size_t d = 0; d < cur.ext.size(); ++d) ext[d] = static_cast<int>(cur.ext[d]);
      rect = Tensor(ext, std::vector<double>(cur.data.begin(), cur.data.end()));
    } else {
      rect = p.table();
      for (int d = N; d-- > 0;) {
        const auto sd = static_cast<std::size_t>(d);
        rect = kernels::apply_axis(rect, sd, to_matrix(v_double[sd], points[sd].size(), v_double[sd].size() / points[sd].size()),
                                   Summation::compensated);
      }
    }
    for (int d = N; d-- > 0;) {
      const auto sd = static_cast<std::size_t>(d);
      Matrix m = to_matrix(v_double[sd], points[sd].size(), v_double[sd].size() / points[sd].size());
      for (double& x : m.data) x = std::abs(x);
      mag = kernels::apply_axis(mag, sd, m, Summation::plain);
    }
    magnitude = std::move(mag);
  }

  // Pull the cut out of the rectangle.
  IntensityGrid grid;
  grid.axes = axes;
  grid.s = s;
  grid.dim_variable = cut.dim_variable;
  grid.fixed = cut.fixed;
  MultiIndex out_ext(axes.size());
  for (std::size_t v = 0; v < axes.size(); ++v) out_ext[v] = static_cast<int>(axes[v].size());
  grid.values = Tensor(out_ext, 0.0);

  std::size_t total_terms = 0;
  for (int d = 0; d < N; ++d) total_terms += static_cast<std::size_t>(p.cutoffs()[static_cast<std::size_t>(d)]);
  const double eps = std::numeric_limits<double>::epsilon();
  const double round_factor = (opts.extended_precision ? eps : 2.0 * eps * static_cast<double>(total_terms + 1));
  double vmax_product = 1.0;
  for (double m : v_absmax) vmax_product *= m;
  const double tail_bound = std::max(0.0, p.tail_mass()) * vmax_product;

  MultiIndex rect_idx(static_cast<std::size_t>(N));
  double bound = 0.0;
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    std::size_t rem = k;
    std::vector<int> var_idx(axes.size());
    for (std::size_t v = axes.size(); v-- > 0;) {
      var_idx[v] = static_cast<int>(rem % axes[v].size());
      rem /= axes[v].size();
    }
    for (int d = 0; d < N; ++d) {
      const int v = cut.dim_variable[static_cast<std::size_t>(d)];
      rect_idx[static_cast<std::size_t>(d)] = v >= 0 ? var_idx[static_cast<std::size_t>(v)] : 0;
    }
    const std::size_t r = rect.offset(rect_idx);
    grid.values[k] = rect[r];
    bound = std::max(bound, round_factor * magnitude[r] + tail_bound);
  }
  for (double x : grid.values.data())
    if (!std::isfinite(x)) throw NumericalError("non-finite quasi-distribution value at s = " + std::to_string(s));
  grid.truncation_bound = bound;
  return grid;
}

IntensityGrid quasi_distribution(const PhotonNumberDistribution& p, double s,
                                 const std::vector<std::vector<double>>& axes, const QuasiOptions& opts) {
  return quasi_distribution(p, s, parse_cut("", p.dims()), axes, opts);
}

std::vector<double> grid_point(const IntensityGrid& grid, std::size_t flat) {
  std::vector<double> var(grid.axes.size());
  for (std::size_t v = grid.axes.size(); v-- > 0;) {
    var[v] = grid.axes[v][flat % grid.axes[v].size()];
    flat /= grid.axes[v].size();
  }
  std::vector<double> out(grid.dim_variable.size());
  for (std::size_t d = 0; d < out.size(); ++d)
    out[d] = grid.dim_variable[d] >= 0 ? var[static_cast<std::size_t>(grid.dim_variable[d])] : grid.fixed[d];
  return out;
}

NegativityReport negativity_scan(const IntensityGrid& grid) {
  NegativityReport rep;
  if (grid.values.size() == 0) return rep;
  const auto data = grid.values.data();
  const auto it = std::min_element(data.begin(), data.end());
  rep.min_value = *it;
  rep.argmin = grid_point(grid, static_cast<std::size_t>(it - data.begin()));
  rep.negative = rep.min_value < -grid.truncation_bound;
  return rep;
}

}  // namespace nckit
