#include <doctest.h>

#include <cmath>

#include "railgen/kink.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "support/testutil.hpp"

using namespace railgen;
using namespace railgen::testsupport;

namespace {

double perpendicular_distance_to_line(const LineSegment& rail, const Vec2& p) {
    const Vec2 d = rail.direction();
    const Vec2 r = p - rail.p0;
    return std::abs(r.x * d.y - r.y * d.x);
}

double max_curve_deviation(const ParametricCurve& curve, const LineSegment& rail, int samples) {
    double worst = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        worst = std::max(worst, perpendicular_distance_to_line(rail, curve.eval(t)));
    }
    return worst;
}

TrackGeometry scene_geometry(const TrackScene& scene) {
    return TrackGeometry{scene.left_rail(), scene.right_rail(),
                         Rect{100, scene.height - 300, 600, 300}, scene.vanishing};
}

} // namespace

TEST_CASE("build_kink_curve") {
    const LineSegment rail{{170.0, 599.0}, {400.0, 150.0}};

    SUBCASE("amplitude 0 stays on the rail") {
        KinkSpec spec;
        spec.amplitude = 0.0;
        const ParametricCurve curve = build_kink_curve(rail, spec);
        CHECK(max_curve_deviation(curve, rail, 100) <= 1e-6);
    }
    SUBCASE("amplitude 20 peaks at 20 near the window middle") {
        KinkSpec spec;
        spec.t0 = 0.4;
        spec.t1 = 0.6;
        spec.amplitude = 20.0;
        const ParametricCurve curve = build_kink_curve(rail, spec);

        double worst = 0.0, worst_t = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double t = i / 1000.0;
            const double dev = perpendicular_distance_to_line(rail, curve.eval(t));
            if (dev > worst) {
                worst = dev;
                worst_t = t;
            }
        }
        CHECK(worst == doctest::Approx(20.0).epsilon(0.025));
        CHECK(std::abs(worst_t - 0.5) < 0.05);
    }
    SUBCASE("curve pins the rail endpoints") {
        KinkSpec spec;
        spec.amplitude = 30.0;
        const ParametricCurve curve = build_kink_curve(rail, spec);
        CHECK(std::abs(curve.eval(0.0).x - rail.p0.x) <= 1e-9);
        CHECK(std::abs(curve.eval(0.0).y - rail.p0.y) <= 1e-9);
        CHECK(std::abs(curve.eval(1.0).x - rail.p1.x) <= 1e-9);
        CHECK(std::abs(curve.eval(1.0).y - rail.p1.y) <= 1e-9);
    }
    SUBCASE("deviation grows monotonically with amplitude") {
        double previous = -1.0;
        for (double amplitude : {0.0, 5.0, 10.0, 20.0, 40.0}) {
            KinkSpec spec;
            spec.t0 = 0.35;
            spec.t1 = 0.65;
            spec.amplitude = amplitude;
            const double dev = max_curve_deviation(build_kink_curve(rail, spec), rail, 400);
            CHECK(dev >= previous);
            previous = dev;
        }
    }
    SUBCASE("direction flips the displacement side") {
        KinkSpec spec;
        spec.t0 = 0.4;
        spec.t1 = 0.6;
        spec.amplitude = 15.0;
        spec.direction = KinkDirection::right;
        const double x_right = build_kink_curve(rail, spec).eval(0.5).x;
        spec.direction = KinkDirection::left;
        const double x_left = build_kink_curve(rail, spec).eval(0.5).x;
        const double x_rail = rail.point_at(0.5).x;
        CHECK(x_right > x_rail);
        CHECK(x_left < x_rail);
    }
    SUBCASE("degenerate windows are rejected") {
        KinkSpec spec;
        spec.t0 = 0.5;
        spec.t1 = 0.5;
        CHECK_THROWS_AS(build_kink_curve(rail, spec), ConfigError);
        spec.t1 = 0.52; // extent below 0.05
        CHECK_THROWS_AS(build_kink_curve(rail, spec), ConfigError);
    }
    SUBCASE("window touching the segment ends still interpolates") {
        KinkSpec spec;
        spec.t0 = 0.0;
        spec.t1 = 1.0;
        spec.amplitude = 10.0;
        const ParametricCurve curve = build_kink_curve(rail, spec);
        CHECK(std::abs(curve.eval(0.0).x - rail.p0.x) <= 1e-9);
        CHECK(std::abs(curve.eval(1.0).y - rail.p1.y) <= 1e-9);
    }
}

TEST_CASE("draw_curve") {
    SUBCASE("thickness 1 straight line tracks Bresenham within one pixel") {
        const RgbImage canvas(64, 64, {0, 0, 0});
        const ParametricCurve line({0.0, 1.0}, {{5.0, 7.0}, {58.0, 40.0}});
        const RgbImage drawn = draw_curve(canvas, line, {255, 255, 255}, 1);
        const auto reference = bresenham(5, 7, 58, 40);

        const auto near_any = [](const std::set<std::pair<int, int>>& pts, int x, int y) {
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    if (pts.count({x + dx, y + dy})) return true;
            return false;
        };
        std::set<std::pair<int, int>> drawn_set;
        for (int y = 0; y < 64; ++y)
            for (int x = 0; x < 64; ++x)
                if (drawn.at(x, y).r == 255) drawn_set.insert({x, y});
        REQUIRE(!drawn_set.empty());
        for (const auto& [x, y] : drawn_set) CHECK(near_any(reference, x, y));
        for (const auto& [x, y] : reference) CHECK(near_any(drawn_set, x, y));
    }
    SUBCASE("thickness 3 stays within 1.5 px of the ideal curve") {
        const RgbImage canvas(64, 64, {0, 0, 0});
        const LineSegment ideal{{10.0, 50.0}, {50.0, 10.0}};
        const ParametricCurve line({0.0, 1.0}, {ideal.p0, ideal.p1});
        const RgbImage drawn = draw_curve(canvas, line, {255, 0, 0}, 3);
        int painted = 0;
        for (int y = 0; y < 64; ++y)
            for (int x = 0; x < 64; ++x)
                if (drawn.at(x, y).r == 255) {
                    ++painted;
                    CHECK(ideal.distance_to({static_cast<double>(x), static_cast<double>(y)}) <=
                          1.5 + 1e-9);
                }
        CHECK(painted > 100);
    }
    SUBCASE("curve entirely outside the image leaves it unchanged") {
        const RgbImage canvas(32, 32, {9, 9, 9});
        const ParametricCurve line({0.0, 1.0}, {{-50.0, -50.0}, {-10.0, -80.0}});
        CHECK(draw_curve(canvas, line, {255, 255, 255}, 5) == canvas);
    }
    SUBCASE("thickness must be positive") {
        const RgbImage canvas(8, 8, {0, 0, 0});
        const ParametricCurve line({0.0, 1.0}, {{1.0, 1.0}, {6.0, 6.0}});
        CHECK_THROWS_AS(draw_curve(canvas, line, {1, 1, 1}, 0), ConfigError);
    }
}

TEST_CASE("remove_rail") {
    TrackScene scene;
    const RgbImage frame = render_track_frame(scene, 0.0, 0);
    const LineSegment rail = scene.left_rail();

    SUBCASE("shift 0 is the identity") {
        CHECK(remove_rail(frame, rail, 6, 0) == frame);
    }
    SUBCASE("pixelwise definition: band copies from +shift, rest untouched") {
        const int band = 6, shift = 15;
        const RgbImage out = remove_rail(frame, rail, band, shift);
        for (int y = 0; y < frame.height(); ++y) {
            for (int x = 0; x < frame.width(); ++x) {
                const double dist =
                    rail.distance_to({static_cast<double>(x), static_cast<double>(y)});
                const Rgb expected = dist <= band ? frame.at(x + shift, y) : frame.at(x, y);
                if (out.at(x, y) != expected) {
                    CAPTURE(x);
                    CAPTURE(y);
                    REQUIRE(out.at(x, y) == expected);
                }
            }
        }
    }
    SUBCASE("no rail-bright pixel survives in the band") {
        const RgbImage out = remove_rail(frame, rail, 6, 15);
        for (int y = 0; y < frame.height(); ++y) {
            for (int x = 0; x < frame.width(); ++x) {
                if (rail.distance_to({static_cast<double>(x), static_cast<double>(y)}) > 6.0)
                    continue;
                const Rgb c = out.at(x, y);
                CHECK(0.299 * c.r + 0.587 * c.g + 0.114 * c.b < 200.0);
            }
        }
    }
    SUBCASE("negative shift works symmetrically") {
        const RgbImage out = remove_rail(frame, scene.right_rail(), 6, -15);
        const LineSegment rr = scene.right_rail();
        for (int y = 200; y < frame.height(); y += 37) {
            for (int x = 0; x < frame.width(); ++x) {
                const double dist = rr.distance_to({static_cast<double>(x), static_cast<double>(y)});
                if (dist <= 6.0) CHECK(out.at(x, y) == frame.at(x - 15, y));
            }
        }
    }
    SUBCASE("shift not clearing the band is rejected") {
        CHECK_THROWS_AS(remove_rail(frame, rail, 6, 4), ConfigError);
        CHECK_THROWS_AS(remove_rail(frame, rail, 6, -6), ConfigError);
    }
    SUBCASE("shifted source leaving the image is rejected") {
        TrackScene edge_scene;
        edge_scene.right_bottom_x = 796.0; // band + shift crosses the right border
        const RgbImage f = render_track_frame(edge_scene, 0.0, 0);
        CHECK_THROWS_WITH_AS(remove_rail(f, edge_scene.right_rail(), 6, 15),
                             doctest::Contains("out of bounds"), ConfigError);
    }
}

TEST_CASE("estimate_rail_color finds the painted rail color") {
    TrackScene scene;
    const RgbImage frame = render_track_frame(scene, 0.0, 0);
    const Rgb estimated = estimate_rail_color(frame, scene.right_rail(), 6);
    CHECK(estimated == scene.rail_color);
}

TEST_CASE("simulate_sun_kink") {
    TrackScene scene;
    const RgbImage frame = render_track_frame(scene, 0.0, 0);
    const TrackGeometry geometry = scene_geometry(scene);
    const KinkStyle style;

    SUBCASE("deterministic for a fixed seed") {
        const auto [a, spec_a] = simulate_sun_kink(frame, geometry, std::nullopt, style, 99);
        const auto [b, spec_b] = simulate_sun_kink(frame, geometry, std::nullopt, style, 99);
        CHECK(a == b);
        CHECK(spec_a.t0 == spec_b.t0);
        CHECK(spec_a.amplitude == spec_b.amplitude);
    }
    SUBCASE("amplitude 0 redraws the straight rail in place") {
        KinkSpec spec;
        spec.rail = RailSide::right;
        spec.t0 = 0.4;
        spec.t1 = 0.6;
        spec.amplitude = 0.0;
        const auto [out, applied] = simulate_sun_kink(frame, geometry, spec, style, 1);
        CHECK(measured_max_displacement(out, scene.right_rail(), 40) <= 2.0);
    }
    SUBCASE("measured lateral displacement tracks the spec amplitude") {
        KinkSpec spec;
        spec.rail = RailSide::right;
        spec.t0 = 0.4;
        spec.t1 = 0.6;
        spec.amplitude = 25.0;
        spec.direction = KinkDirection::right;
        const auto [out, applied] = simulate_sun_kink(frame, geometry, spec, style, 1);
        const double measured = measured_max_displacement(out, scene.right_rail(), 50);
        CHECK(measured == doctest::Approx(25.0).epsilon(0.08));
    }
    SUBCASE("spec amplitude above the style maximum is rejected") {
        KinkSpec spec;
        spec.amplitude = 80.0;
        CHECK_THROWS_AS(simulate_sun_kink(frame, geometry, spec, style, 1), ConfigError);
    }
}

TEST_CASE("simulate_missing_rail matches remove_rail and is per-rail local") {
    TrackScene scene;
    const RgbImage frame = render_track_frame(scene, 0.0, 0);
    const TrackGeometry geometry = scene_geometry(scene);
    const KinkStyle style;

    const RgbImage left_removed = simulate_missing_rail(frame, geometry, RailSide::left, style);
    CHECK(left_removed == remove_rail(frame, scene.left_rail(), style.band_halfwidth, style.shift));

    const RgbImage right_removed = simulate_missing_rail(frame, geometry, RailSide::right, style);

    // Diff regions of the two removals stay disjoint where the bands do not
    // overlap (they only approach each other near the vanishing point).
    for (int y = scene.height / 2; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) {
            const bool left_diff = left_removed.at(x, y) != frame.at(x, y);
            const bool right_diff = right_removed.at(x, y) != frame.at(x, y);
            CHECK_FALSE((left_diff && right_diff));
        }
    }
}

TEST_CASE("simulate_broken_rail draws a dark local line") {
    TrackScene scene;
    const RgbImage frame = render_track_frame(scene, 0.0, 0);
    const TrackGeometry geometry = scene_geometry(scene);
    const KinkStyle style;

    BreakSpec spec;
    spec.rail = RailSide::left;
    spec.t0 = 0.3;
    spec.t1 = 0.5;
    spec.dark_color = {25, 25, 30};
    const RgbImage out = simulate_broken_rail(frame, geometry, spec, style);

    const LineSegment sub{scene.left_rail().point_at(0.3), scene.left_rail().point_at(0.5)};
    std::size_t modified = 0;
    for (int y = 0; y < scene.height; ++y) {
        for (int x = 0; x < scene.width; ++x) {
            if (out.at(x, y) == frame.at(x, y)) continue;
            ++modified;
            const Rgb c = out.at(x, y);
            CHECK(std::max({c.r, c.g, c.b}) <= 60);
            CHECK(sub.distance_to({static_cast<double>(x), static_cast<double>(y)}) <=
                  1.5 * style.thickness);
        }
    }
    CHECK(modified > 0);

    SUBCASE("t0 == t1 is rejected") {
        BreakSpec bad;
        bad.t0 = bad.t1 = 0.5;
        CHECK_THROWS_AS(simulate_broken_rail(frame, geometry, bad, style), ConfigError);
    }
    SUBCASE("bright break color is rejected") {
        BreakSpec bad;
        bad.dark_color = {200, 10, 10};
        CHECK_THROWS_AS(simulate_broken_rail(frame, geometry, bad, style), ConfigError);
    }
}
