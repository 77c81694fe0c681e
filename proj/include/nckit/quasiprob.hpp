#pragma once

#include <string>
#include <vector>

#include "nckit/field.hpp"
#include "nckit/tensor.hpp"

namespace nckit {

/// s-ordered joint quasi-distribution of integrated intensities sampled on a
/// rectangular grid (one axis per output variable).
struct IntensityGrid {
  std::vector<std::vector<double>> axes;
  /// Row-major over the axes, last axis fastest.
  Tensor values;
  double s = 0.0;
  /// Largest estimated error (rounding plus truncated tail) over the grid.
  double truncation_bound = 0.0;
  /// For each field dimension: index of the variable it follows, or -1 if
  /// held at the fixed value in `fixed`.
  std::vector<int> dim_variable;
  std::vector<double> fixed;
};

struct QuasiOptions {
  /// Long-double evaluation, for |s| close to 1.
  bool extended_precision = false;
  /// Abort when a single series term could exceed this magnitude.
  double overflow_limit = 1e300;
};

/// How each field dimension maps onto the output grid: dimensions sharing a
/// variable name are evaluated on the same coordinate (e.g. "u,u,v" is the
/// W1 = W2 plane); a number pins the dimension at that intensity.
struct CutSpec {
  std::vector<int> dim_variable;
  std::vector<double> fixed;
  std::vector<std::string> variables;
};

/// Parses a comma-separated cut such as "u,v,w", "u,u,v" or "u,v,7.9".
/// An empty string means one variable per dimension.
CutSpec parse_cut(const std::string& text, int dims);

/// `points` equally spaced intensities over [0, mean + 8 std] of the
/// marginal in `dim`.
std::vector<double> default_axis(const PhotonNumberDistribution& p, int dim, int points = 200);

/// Default axes for a cut: each variable spans the widest range among the
/// dimensions that follow it.
std::vector<std::vector<double>> default_axes(const PhotonNumberDistribution& p, const CutSpec& cut,
                                              int points = 200);

/// Evaluates P_{W,s} for one effective mode per dimension,
///   prod_j (2/(1-s)) e^{-2 W_j/(1-s)} sum_n p(n) r^{|n|} prod_j L_{n_j}(4 W_j/(1-s^2)),
/// r = (s+1)/(s-1), over the grid described by `cut` and `axes`.
/// Requires -1 < s < 1. Throws NumericalError on overflow risk.
IntensityGrid quasi_distribution(const PhotonNumberDistribution& p, double s, const CutSpec& cut,
                                 const std::vector<std::vector<double>>& axes, const QuasiOptions& opts = {});

/// Full N-dimensional grid, one axis per field dimension.
IntensityGrid quasi_distribution(const PhotonNumberDistribution& p, double s,
                                 const std::vector<std::vector<double>>& axes, const QuasiOptions& opts = {});

struct NegativityReport {
  double min_value = 0.0;
  /// Intensities per field dimension at the minimum.
  std::vector<double> argmin;
  /// min_value < -truncation_bound.
  bool negative = false;
};

NegativityReport negativity_scan(const IntensityGrid& grid);

/// Field-dimension intensities of grid point `flat`.
std::vector<double> grid_point(const IntensityGrid& grid, std::size_t flat);

}  // namespace nckit
