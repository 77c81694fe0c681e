#include "nckit/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "nckit/error.hpp"

namespace nckit::report {
namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string flag(bool b) { return b ? "true" : "false"; }

bool parse_flag(const std::string& cell) {
  if (cell == "true") return true;
  if (cell == "false") return false;
  throw FormatError("expected true/false, got '" + cell + "'");
}

std::optional<double> optional_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  return parse_number(cell);
}

void check_header(const Table& t, const std::vector<std::string>& header) {
  if (t.empty() || t.front() != header) throw FormatError("unexpected CSV header");
  for (std::size_t r = 1; r < t.size(); ++r)
    if (t[r].size() != header.size()) throw FormatError("CSV row " + std::to_string(r) + " has the wrong width");
}

}  // namespace

std::string format_csv(const Table& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += quote(row[c]);
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  Table rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (quoted) throw FormatError("unterminated quoted CSV cell");
  if (any || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& cell) {
  if (cell == "nan") return std::nan("");
  if (cell == "inf") return HUGE_VAL;
  if (cell == "-inf") return -HUGE_VAL;
  double x = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw FormatError("not a number: '" + cell + "'");
  return x;
}

std::string criteria_csv(const std::vector<CriterionRow>& rows) {
  Table t{kCriterionHeader};
  for (const auto& r : rows)
    t.push_back({r.id, r.family, r.indices, format_number(r.s), format_number(r.value),
                 r.value_stderr ? format_number(*r.value_stderr) : "", flag(r.violated)});
  return format_csv(t);
}

std::vector<CriterionRow> parse_criteria_csv(const std::string& text) {
  const Table t = parse_csv(text);
  check_header(t, kCriterionHeader);
  std::vector<CriterionRow> out;
  for (std::size_t r = 1; r < t.size(); ++r) {
    const auto& c = t[r];
    out.push_back({c[0], c[1], c[2], parse_number(c[3]), parse_number(c[4]), optional_number(c[5]),
                   parse_flag(c[6])});
  }
  return out;
}

std::string ncd_csv(const std::vector<NcdRow>& rows) {
  Table t{kNcdHeader};
  for (const auto& r : rows)
    t.push_back({r.id, r.indices, format_number(r.tau), r.tau_stderr ? format_number(*r.tau_stderr) : "",
                 format_number(r.s_threshold), flag(r.saturated), flag(r.nonmonotone)});
  return format_csv(t);
}

std::vector<NcdRow> parse_ncd_csv(const std::string& text) {
  const Table t = parse_csv(text);
  check_header(t, kNcdHeader);
  std::vector<NcdRow> out;
  for (std::size_t r = 1; r < t.size(); ++r) {
    const auto& c = t[r];
    out.push_back({c[0], c[1], parse_number(c[2]), optional_number(c[3]), parse_number(c[4]), parse_flag(c[5]),
                   parse_flag(c[6])});
  }
  return out;
}

std::string grid_csv(const IntensityGrid& grid) {
  Table t;
  std::vector<std::string> header;
  for (std::size_t d = 0; d < grid.dim_variable.size(); ++d) header.push_back("W" + std::to_string(d + 1));
  header.push_back("value");
  t.push_back(std::move(header));
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    std::vector<std::string> row;
    for (double w : grid_point(grid, k)) row.push_back(format_number(w));
    row.push_back(format_number(grid.values[k]));
    t.push_back(std::move(row));
  }
  return format_csv(t);
}

}  // namespace nckit::report
