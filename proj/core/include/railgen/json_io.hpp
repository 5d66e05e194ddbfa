#pragma once

#include <string>
#include <vector>

#include "railgen/kink.hpp"
#include "railgen/track.hpp"
#include "railgen/vegetation.hpp"

// JSON (de)serialization for every config and spec type that crosses the
// CLI boundary. Parsers reject unknown keys (typo protection) and run the
// type's validate() where one exists; missing keys keep their defaults.

namespace railgen {

std::string to_json(const DetectConfig& cfg);
DetectConfig detect_config_from_json(const std::string& text);

std::string to_json(const TrackGeometry& geometry);
TrackGeometry geometry_from_json(const std::string& text);

std::string to_json(const VegetationConfig& cfg);
VegetationConfig vegetation_config_from_json(const std::string& text);

std::string to_json(const std::vector<BlobSpec>& blobs);
std::vector<BlobSpec> blob_specs_from_json(const std::string& text);

std::string to_json(const KinkSpec& spec);
KinkSpec kink_spec_from_json(const std::string& text);

std::string to_json(const BreakSpec& spec);
BreakSpec break_spec_from_json(const std::string& text);

std::string to_json(const KinkStyle& style);
KinkStyle kink_style_from_json(const std::string& text);

/// Reads a whole file; FileAccessError when it cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace railgen
