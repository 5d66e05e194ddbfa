#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "railgen/image.hpp"
#include "railgen/kink.hpp"
#include "railgen/track.hpp"
#include "railgen/vegetation.hpp"

namespace railgen {

enum class AnomalyType { none, vegetation, sun_kink, missing_rail, broken_rail };

std::string anomaly_type_name(AnomalyType type);
AnomalyType anomaly_type_from_name(const std::string& name);

/// One manifest row. `augmentations` is a ';'-joined token list in
/// application order, e.g. "crop(660,780,600,300);flip;brightness(-12)".
/// `spec_json` embeds the anomaly parameters (empty for healthy samples).
struct SampleRecord {
    std::string file;
    bool healthy = true;
    AnomalyType anomaly_type = AnomalyType::none;
    std::string source_file;
    std::uint64_t seed = 0;
    std::string augmentations;
    std::string spec_json;

    friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

struct Manifest {
    std::vector<SampleRecord> records;

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// CSV with header file,label,anomaly_type,source_file,seed,augmentations,spec_json
/// (RFC-4180 quoting, UTF-8, LF line endings).
/// write_manifest rejects records that mix a healthy label with anomaly data.
void write_manifest(const Manifest& manifest, const std::string& path);
Manifest read_manifest(const std::string& path);

struct BuildConfig {
    std::uint32_t total = 500; // must be even: half healthy, half anomalous
    AnomalyType anomaly_type = AnomalyType::vegetation;
    std::string input_dir;
    std::string output_dir;
    std::uint64_t master_seed = 0;
    int brightness_min = -40, brightness_max = 40;
    double flip_probability = 0.5;
    DetectConfig detect;
    VegetationConfig vegetation;
    KinkStyle kink_style;
    bool emit_roi_crops = false; // write the detected ROI crop instead of the full frame
    int jobs = 1;

    void validate() const;
};

std::string to_json(const BuildConfig& cfg);
BuildConfig build_config_from_json(const std::string& text);

struct BuildResult {
    Manifest manifest;
    std::vector<std::string> skipped_inputs; // frames where detection failed
};

/// Structured log callback: one event per call, already formatted as
/// "key=value ..." payload.
using BuildLogger = std::function<void(const std::string& event)>;

/// Builds a balanced dataset: total/2 healthy + total/2 anomalous samples,
/// sources drawn round-robin from the decodable, detectable frames of
/// input_dir (sorted by name). Per-sample seed is mix_seed(master_seed, i),
/// so the output is a pure function of the config and the input bytes, and
/// samples can be generated concurrently (jobs > 1) with identical results.
/// Writes images under output_dir/images/ and output_dir/manifest.csv;
/// total == 0 returns an empty manifest and writes nothing.
/// Throws NoInputError when no input frame is usable.
BuildResult build_dataset(const BuildConfig& cfg, const BuildLogger& log = {});

/// The paper's two augmentations, order fixed: horizontal flip (optional),
/// then brightness shift.
RgbImage augment(const RgbImage& img, bool flip, int brightness_delta);

} // namespace railgen
