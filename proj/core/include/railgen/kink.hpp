#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "railgen/image.hpp"
#include "railgen/spline.hpp"
#include "railgen/track.hpp"

namespace railgen {

enum class RailSide { left, right };

/// Lateral displacement side, relative to increasing x.
enum class KinkDirection { left, right };

/// One sun kink: the rail is pushed sideways by `amplitude` pixels over the
/// parameter window [t0, t1] of the rail segment (t=0 bottom, t=1 top).
struct KinkSpec {
    double t0 = 0.35;
    double t1 = 0.65;
    double amplitude = 20.0;
    KinkDirection direction = KinkDirection::right;
    RailSide rail = RailSide::right;

    /// Throws ConfigError when the window or amplitude is out of range.
    void validate(double amplitude_max = 1e9) const;
};

/// Broken rail: a dark straight line joining two points on the rail.
struct BreakSpec {
    double t0 = 0.4;
    double t1 = 0.6;
    RailSide rail = RailSide::right;
    Rgb dark_color{30, 30, 30}; // every channel <= 60

    void validate() const;
};

/// Rendering parameters shared by the kink-family simulators, plus the
/// ranges used when a KinkSpec is drawn from a seed.
struct KinkStyle {
    std::optional<Rgb> rail_color; // estimated from the rail band when unset
    int thickness = 3;
    int band_halfwidth = 6;
    int shift = 15; // 2.5 * band_halfwidth
    double amplitude_max = 40.0;

    double t0_min = 0.05, t0_max = 0.55;
    double extent_min = 0.15, extent_max = 0.40;
    double amplitude_min = 5.0;

    void validate() const;
};

/// Erases the rail by copying texture sideways: every pixel within
/// band_halfwidth (perpendicular distance) of the segment is replaced by the
/// input pixel `shift` columns to the right, so ties and ballast stay intact.
/// shift == 0 is the identity. Otherwise |shift| must exceed band_halfwidth
/// (the source band has to clear the rail) and every source pixel must be in
/// bounds; violations throw ConfigError.
RgbImage remove_rail(const RgbImage& img, const LineSegment& rail, int band_halfwidth,
                     int shift);

/// Rail paint color: per-channel median of the brightest quartile of the
/// band around the segment. Rails are specular against ballast, so the
/// bright quartile is rail surface even when ties cross the band.
Rgb estimate_rail_color(const RgbImage& img, const LineSegment& rail, int band_halfwidth);

/// Kinked centerline: spline through the rail points at t in
/// {0, t0, (t0+t1)/2, t1, 1} with the middle knot displaced by spec.amplitude
/// perpendicular to the rail. Coincides with the rail at t=0 and t=1.
ParametricCurve build_kink_curve(const LineSegment& rail, const KinkSpec& spec);

/// Rasterizes the curve by stamping a filled disc of diameter `thickness` at
/// arc-length steps <= 0.5 px. Samples falling outside the image are clipped
/// silently. Throws ConfigError when thickness < 1.
RgbImage draw_curve(const RgbImage& img, const ParametricCurve& curve, Rgb color,
                    int thickness);

/// Removes the selected rail and redraws it kinked. When `spec` is empty its
/// fields are drawn from `seed` within the style ranges. Returns the image
/// and the spec actually applied.
std::pair<RgbImage, KinkSpec> simulate_sun_kink(const RgbImage& img,
                                                const TrackGeometry& geometry,
                                                std::optional<KinkSpec> spec,
                                                const KinkStyle& style, std::uint64_t seed);

/// Removal with no redraw.
RgbImage simulate_missing_rail(const RgbImage& img, const TrackGeometry& geometry,
                               RailSide rail, const KinkStyle& style);

/// Dark straight line between the rail points at spec.t0 and spec.t1.
RgbImage simulate_broken_rail(const RgbImage& img, const TrackGeometry& geometry,
                              const BreakSpec& spec, const KinkStyle& style);

/// Seed-determined specs, used by simulate_sun_kink and the CLI.
KinkSpec draw_kink_spec(class Rng& rng, const KinkStyle& style);
BreakSpec draw_break_spec(class Rng& rng, const KinkStyle& style);

const LineSegment& rail_of(const TrackGeometry& geometry, RailSide side);

} // namespace railgen
