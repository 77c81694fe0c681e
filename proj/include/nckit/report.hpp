#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nckit/quasiprob.hpp"

namespace nckit::report {

// Tidy CSV outputs. Every file starts with a header row; optional numbers are
// written as empty cells and booleans as true/false.

struct CriterionRow {
  std::string id;
  std::string family;
  std::string indices;
  double s = 1.0;
  double value = 0.0;
  std::optional<double> value_stderr;
  bool violated = false;
};

struct NcdRow {
  std::string id;
  std::string indices;
  double tau = 0.0;
  std::optional<double> tau_stderr;
  double s_threshold = 1.0;
  bool saturated = false;
  bool nonmonotone = false;
};

inline const std::vector<std::string> kCriterionHeader{"id", "family", "indices", "s", "value", "value_stderr",
                                                       "violated"};
inline const std::vector<std::string> kNcdHeader{"id", "indices", "tau", "tau_stderr", "s_threshold", "saturated",
                                                 "nonmonotone"};

using Table = std::vector<std::vector<std::string>>;

/// RFC 4180 quoting: cells holding commas, quotes or line breaks are quoted.
std::string format_csv(const Table& rows);
/// Inverse of format_csv. Throws FormatError on unbalanced quotes.
Table parse_csv(const std::string& text);

/// Round-trip exact decimal representation.
std::string format_number(double x);
double parse_number(const std::string& cell);

std::string criteria_csv(const std::vector<CriterionRow>& rows);
std::vector<CriterionRow> parse_criteria_csv(const std::string& text);

std::string ncd_csv(const std::vector<NcdRow>& rows);
std::vector<NcdRow> parse_ncd_csv(const std::string& text);

/// Header W1..WN,value; one row per grid point with every field dimension's
/// intensity (fixed dimensions included).
std::string grid_csv(const IntensityGrid& grid);

}  // namespace nckit::report
