#include "railgen/vegetation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace railgen {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

std::uint32_t BlobSpec::max_pixels(double sigma_x, double sigma_y) {
    // A footprint can never be narrower than one pixel, so sigmas below 1 px
    // count as 1 px; otherwise degenerate blobs could not be sampled at all.
    const double cap = 10.0 * kTwoPi * std::max(sigma_x, 1.0) * std::max(sigma_y, 1.0);
    if (cap >= 4294967295.0) return 4294967295u;
    return static_cast<std::uint32_t>(cap);
}

void BlobSpec::validate(const Rect& roi) const {
    if (!(sigma_x > 0.0) || !(sigma_y > 0.0))
        throw ConfigError("blob sigmas must be positive");
    if (!(center_x >= roi.x && center_x < roi.x + roi.w && center_y >= roi.y &&
          center_y < roi.y + roi.h))
        throw ConfigError("blob center outside roi");
    if (n_pixels > max_pixels(sigma_x, sigma_y))
        throw ConfigError("blob n_pixels " + std::to_string(n_pixels) +
                          " exceeds density cap " +
                          std::to_string(max_pixels(sigma_x, sigma_y)));
}

const CountRange& VegetationConfig::blob_count_range(VegetationLevel l) const {
    switch (l) {
        case VegetationLevel::sparse: return sparse_blobs;
        case VegetationLevel::medium: return medium_blobs;
        default: return high_blobs;
    }
}

void VegetationConfig::validate() const {
    if (sparse_blobs.min > sparse_blobs.max || medium_blobs.min > medium_blobs.max ||
        high_blobs.min > high_blobs.max)
        throw ConfigError("blob count ranges must be non-empty");
    if (sparse_blobs.max >= medium_blobs.min || medium_blobs.max >= high_blobs.min)
        throw ConfigError("blob count ranges must be disjoint and ordered sparse < medium < high");
    if (!(sigma_min > 0.0) || sigma_min > sigma_max) throw ConfigError("bad sigma range");
    if (pixels_per_blob_min > pixels_per_blob_max)
        throw ConfigError("bad pixels-per-blob range");
    if (r_min > r_max || g_min > g_max || b_min > b_max)
        throw ConfigError("color ranges must be non-empty");
    if (g_min <= r_max || g_min <= b_max)
        throw ConfigError("green range must dominate: g_min must exceed r_max and b_max");
}

namespace {

void render_blob_into(RgbImage& img, const BlobSpec& blob, const Rect& roi,
                      const VegetationConfig& cfg, Rng& rng) {
    blob.validate(roi);
    Rng color_rng(blob.hue_seed);
    for (std::uint32_t i = 0; i < blob.n_pixels; ++i) {
        const double sx = rng.normal(blob.center_x, blob.sigma_x);
        const double sy = rng.normal(blob.center_y, blob.sigma_y);
        const auto px = static_cast<int>(std::llround(sx));
        const auto py = static_cast<int>(std::llround(sy));
        if (!roi.contains(px, py)) continue;
        const Rgb green{static_cast<std::uint8_t>(color_rng.uniform_int(cfg.r_min, cfg.r_max)),
                        static_cast<std::uint8_t>(color_rng.uniform_int(cfg.g_min, cfg.g_max)),
                        static_cast<std::uint8_t>(color_rng.uniform_int(cfg.b_min, cfg.b_max))};
        img.set(px, py, green);
    }
}

} // namespace

RgbImage render_blob(const RgbImage& img, const BlobSpec& blob, const Rect& roi,
                     const VegetationConfig& cfg, Rng& rng) {
    RgbImage out = img;
    render_blob_into(out, blob, roi, cfg, rng);
    return out;
}

std::pair<RgbImage, std::vector<BlobSpec>> simulate_vegetation(const RgbImage& img,
                                                               const TrackGeometry& geometry,
                                                               const VegetationConfig& cfg,
                                                               std::uint64_t seed) {
    cfg.validate();
    const Rect& roi = geometry.roi;
    if (roi.w <= 0 || roi.h <= 0 || roi.x < 0 || roi.y < 0 || roi.x + roi.w > img.width() ||
        roi.y + roi.h > img.height())
        throw ConfigError("roi outside image");

    Rng rng(seed);
    const CountRange& counts = cfg.blob_count_range(cfg.level);
    const auto n_blobs =
        static_cast<std::uint32_t>(rng.uniform_int(counts.min, counts.max));

    std::vector<BlobSpec> specs;
    specs.reserve(n_blobs);
    RgbImage out = img;
    for (std::uint32_t i = 0; i < n_blobs; ++i) {
        BlobSpec blob;
        blob.center_x = rng.uniform(roi.x, roi.x + roi.w);
        blob.center_y = rng.uniform(roi.y, roi.y + roi.h);
        blob.sigma_x = rng.uniform(cfg.sigma_min, cfg.sigma_max);
        blob.sigma_y = rng.uniform(cfg.sigma_min, cfg.sigma_max);
        const auto wanted = static_cast<std::uint32_t>(
            rng.uniform_int(cfg.pixels_per_blob_min, cfg.pixels_per_blob_max));
        blob.n_pixels = std::min(wanted, BlobSpec::max_pixels(blob.sigma_x, blob.sigma_y));
        blob.hue_seed = rng.next_u64();
        render_blob_into(out, blob, roi, cfg, rng);
        specs.push_back(blob);
    }
    return {std::move(out), std::move(specs)};
}

} // namespace railgen
