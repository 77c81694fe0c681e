#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nckit/detection.hpp"
#include "nckit/field.hpp"
#include "nckit/synth.hpp"

namespace nckit::io {

// JSON files exchanged by the command-line tool. Dimension numbers inside
// spec files (pair "dims", noise "dim") are 1-based.

inline constexpr const char* kFieldSchema = "nckit-field-v1";

enum class FieldKind { distribution, histogram };

/// Contents of a field file: a photon-number distribution ("pnd") or a
/// photocount histogram ("histogram"), sharing one schema.
struct FieldFile {
  FieldKind kind = FieldKind::distribution;
  Tensor table;
  double tail_mass = 0.0;
  std::optional<long long> total_counts;

  PhotonNumberDistribution distribution() const;
  PhotocountHistogram histogram() const;
};

std::string field_to_json(const PhotonNumberDistribution& p);
std::string field_to_json(const PhotocountHistogram& f);
FieldFile field_from_json(const std::string& text);

GaussianFieldSpec synth_spec_from_json(const std::string& text);
std::string synth_spec_to_json(const GaussianFieldSpec& spec);

std::vector<ChannelConfig> detection_config_from_json(const std::string& text);
std::string detection_config_to_json(const std::vector<ChannelConfig>& channels);

std::string read_text(const std::filesystem::path& path);
/// Writes via a temporary file in the same directory and renames it.
void write_text(const std::filesystem::path& path, const std::string& text);

FieldFile read_field(const std::filesystem::path& path);

}  // namespace nckit::io
