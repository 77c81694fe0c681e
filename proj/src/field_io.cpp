#include "nckit/field_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nckit/error.hpp"

namespace nckit::io {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw FormatError(std::string("'") + what + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError(std::string("'") + what + "' must be finite");
  return x;
}

long long integer(const json& v, const char* what) {
  if (!v.is_number_integer()) throw FormatError(std::string("'") + what + "' must be an integer");
  return v.get<long long>();
}

json field_json(const char* kind, const Tensor& t, double tail, std::optional<long long> total) {
  json j;
  j["schema"] = kFieldSchema;
  j["kind"] = kind;
  j["dims"] = t.rank();
  j["cutoffs"] = t.extents().values();
  j["data"] = t.storage();
  j["tail_mass"] = tail;
  if (total) j["total_counts"] = *total;
  return j;
}

}  // namespace

PhotonNumberDistribution FieldFile::distribution() const { return PhotonNumberDistribution(table, tail_mass); }

PhotocountHistogram FieldFile::histogram() const { return PhotocountHistogram(table, total_counts); }

std::string field_to_json(const PhotonNumberDistribution& p) {
  return field_json("pnd", p.table(), p.tail_mass(), std::nullopt).dump() + "\n";
}

std::string field_to_json(const PhotocountHistogram& f) {
  return field_json("histogram", f.table(), 0.0, f.total_counts()).dump() + "\n";
}

FieldFile field_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw FormatError("field file must be a JSON object");
  const json& schema = require(j, "schema");
  if (!schema.is_string() || schema.get<std::string>() != kFieldSchema)
    throw FormatError(std::string("unsupported field schema; expected ") + kFieldSchema);
  FieldFile out;
  const json& kind = require(j, "kind");
  if (kind == "pnd")
    out.kind = FieldKind::distribution;
  else if (kind == "histogram")
    out.kind = FieldKind::histogram;
  else
    throw FormatError("field kind must be \"pnd\" or \"histogram\"");

  const long long dims = integer(require(j, "dims"), "dims");
  const json& cut = require(j, "cutoffs");
  if (!cut.is_array() || static_cast<long long>(cut.size()) != dims || dims <= 0)
    throw FormatError("'cutoffs' must list one positive integer per dimension");
  std::vector<int> ext;
  std::size_t expected = 1;
  for (const auto& c : cut) {
    const long long v = integer(c, "cutoffs");
    if (v <= 0 || v > (1 << 20)) throw FormatError("cutoffs must be positive");
    ext.push_back(static_cast<int>(v));
    expected *= static_cast<std::size_t>(v);
  }
  const json& data = require(j, "data");
  if (!data.is_array() || data.size() != expected)
    throw FormatError("'data' must hold prod(cutoffs) = " + std::to_string(expected) + " numbers");
  std::vector<double> values;
  values.reserve(expected);
  for (const auto& v : data) values.push_back(number(v, "data"));
  out.table = Tensor(MultiIndex(ext), std::move(values));
  out.tail_mass = j.contains("tail_mass") ? number(j.at("tail_mass"), "tail_mass") : 0.0;
  if (j.contains("total_counts") && !j.at("total_counts").is_null()) {
    const long long n = integer(j.at("total_counts"), "total_counts");
    if (n < 0) throw FormatError("'total_counts' must be nonnegative");
    out.total_counts = n;
  }
  return out;
}

GaussianFieldSpec synth_spec_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) throw FormatError("synth spec must be a JSON object");
  GaussianFieldSpec spec;
  const json& cut = require(j, "cutoffs");
  if (!cut.is_array() || cut.empty()) throw FormatError("'cutoffs' must be a nonempty array");
  std::vector<int> ext;
  for (const auto& c : cut) {
    const long long v = integer(c, "cutoffs");
    if (v <= 0) throw FormatError("cutoffs must be positive");
    ext.push_back(static_cast<int>(v));
  }
  spec.cutoffs = MultiIndex(ext);
  const auto dim_of = [&](const json& v) {
    const long long d = integer(v, "dim");
    if (d < 1 || d > static_cast<long long>(ext.size())) throw FormatError("dimension out of range (1-based)");
    return static_cast<int>(d - 1);
  };
  if (j.contains("pairs")) {
    if (!j.at("pairs").is_array()) throw FormatError("'pairs' must be an array");
    for (const auto& item : j.at("pairs")) {
      const json& dims = require(item, "dims");
      if (!dims.is_array() || dims.size() != 2) throw FormatError("pair 'dims' must have two entries");
      PairComponent c;
      c.a = dim_of(dims[0]);
      c.b = dim_of(dims[1]);
      c.mean = number(require(item, "B"), "B");
      c.modes = number(require(item, "M"), "M");
      spec.pairs.push_back(c);
    }
  }
  if (j.contains("noise")) {
    if (!j.at("noise").is_array()) throw FormatError("'noise' must be an array");
    for (const auto& item : j.at("noise")) {
      NoiseComponent c;
      c.dim = dim_of(require(item, "dim"));
      c.mean = number(require(item, "B"), "B");
      c.modes = number(require(item, "M"), "M");
      spec.noise.push_back(c);
    }
  }
  return spec;
}

std::string synth_spec_to_json(const GaussianFieldSpec& spec) {
  json j;
  j["pairs"] = json::array();
  for (const auto& c : spec.pairs) j["pairs"].push_back({{"dims", {c.a + 1, c.b + 1}}, {"B", c.mean}, {"M", c.modes}});
  j["noise"] = json::array();
  for (const auto& c : spec.noise) j["noise"].push_back({{"dim", c.dim + 1}, {"B", c.mean}, {"M", c.modes}});
  j["cutoffs"] = spec.cutoffs.values();
  return j.dump(2) + "\n";
}

std::vector<ChannelConfig> detection_config_from_json(const std::string& text) {
  const json j = parse(text);
  const json& ch = require(j, "channels");
  if (!ch.is_array() || ch.empty()) throw FormatError("'channels' must be a nonempty array");
  std::vector<ChannelConfig> out;
  for (const auto& item : ch) {
    ChannelConfig c;
    c.eta = item.contains("eta") ? number(item.at("eta"), "eta") : 1.0;
    c.dark = item.contains("dark") ? number(item.at("dark"), "dark") : 0.0;
    if (item.contains("saturation") && !item.at("saturation").is_null()) {
      const long long sat = integer(item.at("saturation"), "saturation");
      if (sat < 0) throw FormatError("'saturation' must be nonnegative");
      c.saturation = static_cast<int>(sat);
    }
    if (c.eta < 0.0 || c.eta > 1.0) throw FormatError("'eta' must lie in [0, 1]");
    if (c.dark < 0.0) throw FormatError("'dark' must be nonnegative");
    out.push_back(c);
  }
  return out;
}

std::string detection_config_to_json(const std::vector<ChannelConfig>& channels) {
  json j;
  j["channels"] = json::array();
  for (const auto& c : channels) {
    json item{{"eta", c.eta}, {"dark", c.dark}};
    item["saturation"] = c.saturation ? json(*c.saturation) : json(nullptr);
    j["channels"].push_back(item);
  }
  return j.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out << text;
    if (!out) throw FormatError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

FieldFile read_field(const std::filesystem::path& path) { return field_from_json(read_text(path)); }

}  // namespace nckit::io
