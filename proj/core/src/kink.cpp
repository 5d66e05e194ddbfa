#include "railgen/kink.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "railgen/rng.hpp"

namespace railgen {

void KinkSpec::validate(double amplitude_max) const {
    if (!(t0 >= 0.0 && t1 <= 1.0 && t0 < t1))
        throw ConfigError("kink window requires 0 <= t0 < t1 <= 1");
    if (t1 - t0 < 0.05) throw ConfigError("kink window must span at least 0.05 of the rail");
    if (!(amplitude >= 0.0)) throw ConfigError("kink amplitude must be >= 0");
    if (amplitude > amplitude_max)
        throw ConfigError("kink amplitude " + std::to_string(amplitude) + " exceeds maximum " +
                          std::to_string(amplitude_max));
}

void BreakSpec::validate() const {
    if (!(t0 >= 0.0 && t1 <= 1.0 && t0 < t1))
        throw ConfigError("break window requires 0 <= t0 < t1 <= 1");
    if (std::max({dark_color.r, dark_color.g, dark_color.b}) > 60)
        throw ConfigError("break color must be dark (every channel <= 60)");
}

void KinkStyle::validate() const {
    if (thickness < 1) throw ConfigError("rail thickness must be >= 1");
    if (band_halfwidth < 1) throw ConfigError("band halfwidth must be >= 1");
    if (shift != 0 && std::abs(shift) <= band_halfwidth)
        throw ConfigError("shift must exceed band halfwidth");
    if (!(amplitude_max > 0.0) || !(amplitude_min >= 0.0) || amplitude_min > amplitude_max)
        throw ConfigError("bad amplitude range");
    if (!(t0_min >= 0.0 && t0_max >= t0_min && extent_min >= 0.05 && extent_max >= extent_min &&
          t0_max + extent_max <= 1.0))
        throw ConfigError("bad kink window ranges");
}

const LineSegment& rail_of(const TrackGeometry& geometry, RailSide side) {
    return side == RailSide::left ? geometry.left_rail : geometry.right_rail;
}

namespace {

/// Integer bounding box of the segment dilated by the band, clipped to the image.
Rect band_bounds(const RgbImage& img, const LineSegment& rail, int band_halfwidth) {
    const double pad = band_halfwidth + 1.0;
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min(rail.p0.x, rail.p1.x) - pad)));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min(rail.p0.y, rail.p1.y) - pad)));
    const int x1 = std::min(img.width() - 1,
                            static_cast<int>(std::ceil(std::max(rail.p0.x, rail.p1.x) + pad)));
    const int y1 = std::min(img.height() - 1,
                            static_cast<int>(std::ceil(std::max(rail.p0.y, rail.p1.y) + pad)));
    return Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

} // namespace

RgbImage remove_rail(const RgbImage& img, const LineSegment& rail, int band_halfwidth,
                     int shift) {
    if (band_halfwidth < 1) throw ConfigError("band halfwidth must be >= 1");
    if (shift == 0) return img;
    if (std::abs(shift) <= band_halfwidth)
        throw ConfigError("shift must exceed band halfwidth so the source clears the rail");

    RgbImage out = img;
    const Rect bounds = band_bounds(img, rail, band_halfwidth);
    for (int y = bounds.y; y < bounds.y + bounds.h; ++y) {
        for (int x = bounds.x; x < bounds.x + bounds.w; ++x) {
            if (rail.distance_to({static_cast<double>(x), static_cast<double>(y)}) >
                band_halfwidth)
                continue;
            const int sx = x + shift;
            if (sx < 0 || sx >= img.width())
                throw ConfigError("shifted source out of bounds at x=" + std::to_string(x) +
                                  " shift=" + std::to_string(shift));
            out.set(x, y, img.at(sx, y));
        }
    }
    return out;
}

Rgb estimate_rail_color(const RgbImage& img, const LineSegment& rail, int band_halfwidth) {
    struct Sample {
        double luma;
        Rgb color;
    };
    std::vector<Sample> band;
    const Rect bounds = band_bounds(img, rail, band_halfwidth);
    for (int y = bounds.y; y < bounds.y + bounds.h; ++y) {
        for (int x = bounds.x; x < bounds.x + bounds.w; ++x) {
            if (rail.distance_to({static_cast<double>(x), static_cast<double>(y)}) >
                band_halfwidth)
                continue;
            const Rgb c = img.at(x, y);
            band.push_back({0.299 * c.r + 0.587 * c.g + 0.114 * c.b, c});
        }
    }
    if (band.empty()) throw ConfigError("rail band lies outside the image");

    std::sort(band.begin(), band.end(), [](const Sample& a, const Sample& b) {
        if (a.luma != b.luma) return a.luma < b.luma;
        return std::tie(a.color.r, a.color.g, a.color.b) <
               std::tie(b.color.r, b.color.g, b.color.b);
    });
    const std::size_t q = std::max<std::size_t>(1, band.size() / 4);
    const std::size_t start = band.size() - q;

    auto channel_median = [&](std::uint8_t Rgb::* ch) {
        std::vector<std::uint8_t> vals(q);
        for (std::size_t i = 0; i < q; ++i) vals[i] = band[start + i].color.*ch;
        std::nth_element(vals.begin(), vals.begin() + q / 2, vals.end());
        return vals[q / 2];
    };
    return Rgb{channel_median(&Rgb::r), channel_median(&Rgb::g), channel_median(&Rgb::b)};
}

ParametricCurve build_kink_curve(const LineSegment& rail, const KinkSpec& spec) {
    spec.validate();

    const Vec2 d = rail.direction();
    Vec2 perp{-d.y, d.x};
    // Canonical side: perp points toward increasing x (increasing y when vertical).
    if (perp.x < 0.0 || (perp.x == 0.0 && perp.y < 0.0)) perp = {-perp.x, -perp.y};
    const double sign = spec.direction == KinkDirection::right ? 1.0 : -1.0;
    const Vec2 offset = perp * (sign * spec.amplitude);

    const double mid = 0.5 * (spec.t0 + spec.t1);
    const double knot_ts[5] = {0.0, spec.t0, mid, spec.t1, 1.0};
    std::vector<double> ts;
    std::vector<Vec2> points;
    for (int i = 0; i < 5; ++i) {
        if (!ts.empty() && knot_ts[i] - ts.back() < 1e-9) continue; // collapse duplicate ends
        ts.push_back(knot_ts[i]);
        Vec2 p = rail.point_at(knot_ts[i]);
        if (i == 2) p = p + offset;
        points.push_back(p);
    }
    return ParametricCurve(std::move(ts), points);
}

RgbImage draw_curve(const RgbImage& img, const ParametricCurve& curve, Rgb color,
                    int thickness) {
    if (thickness < 1) throw ConfigError("curve thickness must be >= 1");

    // Step so consecutive samples are at most ~0.4 px apart, bounded by the
    // fastest point of the parameterization.
    const double t0 = curve.t_front();
    const double t1 = curve.t_back();
    double max_speed = 0.0;
    for (int i = 0; i <= 256; ++i) {
        const double t = t0 + (t1 - t0) * (i / 256.0);
        max_speed = std::max(max_speed, curve.derivative(t).norm());
    }
    const std::size_t n_steps = std::min<std::size_t>(
        1u << 22, static_cast<std::size_t>(std::ceil(max_speed * (t1 - t0) / 0.4)) + 1);

    RgbImage out = img;
    const double radius = thickness / 2.0;
    const double r2 = radius * radius;
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const Vec2 p = curve.eval(t0 + (t1 - t0) * (static_cast<double>(i) / n_steps));
        const int xa = static_cast<int>(std::ceil(p.x - radius));
        const int xb = static_cast<int>(std::floor(p.x + radius));
        const int ya = static_cast<int>(std::ceil(p.y - radius));
        const int yb = static_cast<int>(std::floor(p.y + radius));
        for (int y = ya; y <= yb; ++y) {
            for (int x = xa; x <= xb; ++x) {
                if (!out.in_bounds(x, y)) continue;
                const double dx = x - p.x;
                const double dy = y - p.y;
                if (dx * dx + dy * dy <= r2) out.set(x, y, color);
            }
        }
    }
    return out;
}

KinkSpec draw_kink_spec(Rng& rng, const KinkStyle& style) {
    KinkSpec spec;
    spec.rail = rng.uniform_int(0, 1) == 0 ? RailSide::left : RailSide::right;
    spec.t0 = rng.uniform(style.t0_min, style.t0_max);
    spec.t1 = spec.t0 + rng.uniform(style.extent_min, style.extent_max);
    spec.amplitude = rng.uniform(style.amplitude_min, style.amplitude_max);
    spec.direction = rng.uniform_int(0, 1) == 0 ? KinkDirection::left : KinkDirection::right;
    return spec;
}

BreakSpec draw_break_spec(Rng& rng, const KinkStyle& style) {
    BreakSpec spec;
    spec.rail = rng.uniform_int(0, 1) == 0 ? RailSide::left : RailSide::right;
    spec.t0 = rng.uniform(style.t0_min, style.t0_max);
    spec.t1 = spec.t0 + rng.uniform(style.extent_min, style.extent_max);
    const auto v = static_cast<std::uint8_t>(rng.uniform_int(15, 55));
    spec.dark_color = {v, v, v};
    return spec;
}

std::pair<RgbImage, KinkSpec> simulate_sun_kink(const RgbImage& img,
                                                const TrackGeometry& geometry,
                                                std::optional<KinkSpec> spec,
                                                const KinkStyle& style, std::uint64_t seed) {
    style.validate();
    KinkSpec applied;
    if (spec) {
        applied = *spec;
    } else {
        Rng rng(seed);
        applied = draw_kink_spec(rng, style);
    }
    applied.validate(style.amplitude_max);

    const LineSegment& rail = rail_of(geometry, applied.rail);
    const Rgb color =
        style.rail_color ? *style.rail_color : estimate_rail_color(img, rail, style.band_halfwidth);
    RgbImage out = remove_rail(img, rail, style.band_halfwidth, style.shift);
    out = draw_curve(out, build_kink_curve(rail, applied), color, style.thickness);
    return {std::move(out), applied};
}

RgbImage simulate_missing_rail(const RgbImage& img, const TrackGeometry& geometry, RailSide rail,
                               const KinkStyle& style) {
    style.validate();
    return remove_rail(img, rail_of(geometry, rail), style.band_halfwidth, style.shift);
}

RgbImage simulate_broken_rail(const RgbImage& img, const TrackGeometry& geometry,
                              const BreakSpec& spec, const KinkStyle& style) {
    style.validate();
    spec.validate();
    const LineSegment& rail = rail_of(geometry, spec.rail);
    const ParametricCurve line({spec.t0, spec.t1},
                               {rail.point_at(spec.t0), rail.point_at(spec.t1)});
    return draw_curve(img, line, spec.dark_color, style.thickness);
}

} // namespace railgen
