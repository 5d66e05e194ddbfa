#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "railgen/image.hpp"
#include "railgen/rng.hpp"
#include "railgen/track.hpp"

namespace railgen {

/// One grass blob: greenish pixels scattered around `center` with a
/// per-axis Gaussian spread.
struct BlobSpec {
    double center_x = 0.0;
    double center_y = 0.0;
    double sigma_x = 4.0;
    double sigma_y = 4.0;
    std::uint32_t n_pixels = 400;
    std::uint64_t hue_seed = 0; // seeds the per-pixel color stream

    /// Density cap: more samples than 10x the 1-sigma ellipse area would
    /// saturate into a solid square.
    static std::uint32_t max_pixels(double sigma_x, double sigma_y);

    /// Throws ConfigError when the center is outside `roi`, a sigma is not
    /// positive, or n_pixels exceeds the density cap.
    void validate(const Rect& roi) const;
};

enum class VegetationLevel { sparse, medium, high };

struct CountRange {
    std::uint32_t min = 0;
    std::uint32_t max = 0;
};

/// Blob-placement parameters; blob count per level is the severity control.
struct VegetationConfig {
    VegetationLevel level = VegetationLevel::medium;
    CountRange sparse_blobs{2, 6};
    CountRange medium_blobs{7, 15};
    CountRange high_blobs{16, 30};
    double sigma_min = 2.0, sigma_max = 12.0;
    std::uint32_t pixels_per_blob_min = 100, pixels_per_blob_max = 1500;
    // Channel ranges, inclusive. g_min > max(r_max, b_max) keeps every
    // sampled color visibly green.
    std::uint8_t r_min = 10, r_max = 80;
    std::uint8_t g_min = 90, g_max = 200;
    std::uint8_t b_min = 10, b_max = 80;
    // Only "normal" exists today; the field leaves room for skewed variants.
    enum class Distribution { normal } distribution = Distribution::normal;

    const CountRange& blob_count_range(VegetationLevel l) const;

    /// Throws ConfigError when ranges are empty, the green guarantee is
    /// violated, or the per-level count ranges overlap or are out of order.
    void validate() const;
};

/// Scatters blob.n_pixels Gaussian samples around the blob center, rounds
/// them to pixels, drops those outside `roi`, and paints survivors with
/// independently drawn greenish colors (color stream seeded by
/// blob.hue_seed). Position samples come from `rng`.
RgbImage render_blob(const RgbImage& img, const BlobSpec& blob, const Rect& roi,
                     const VegetationConfig& cfg, Rng& rng);

/// Draws a blob count for cfg.level, generates that many BlobSpecs with
/// centers uniform over geometry.roi (on-rail positions included), renders
/// them in order, and returns the image plus the specs used. Deterministic
/// in (img, cfg, seed).
std::pair<RgbImage, std::vector<BlobSpec>> simulate_vegetation(const RgbImage& img,
                                                               const TrackGeometry& geometry,
                                                               const VegetationConfig& cfg,
                                                               std::uint64_t seed);

} // namespace railgen
