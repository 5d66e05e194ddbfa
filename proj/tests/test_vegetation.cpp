#include <doctest.h>

#include <cmath>

#include "railgen/vegetation.hpp"
#include "support/testutil.hpp"

using namespace railgen;
using namespace railgen::testsupport;

namespace {

TrackGeometry flat_geometry(int w, int h, Rect roi) {
    return TrackGeometry{{{roi.x + 50.0, h - 1.0}, {w / 2.0, 20.0}},
                         {{roi.x + roi.w - 50.0, h - 1.0}, {w / 2.0, 20.0}},
                         roi,
                         {w / 2.0, 20.0}};
}

} // namespace

TEST_CASE("render_blob") {
    const RgbImage black(200, 160, {0, 0, 0});
    const Rect roi{20, 30, 150, 100};
    const VegetationConfig cfg;

    SUBCASE("zero pixels leaves the image untouched") {
        BlobSpec blob;
        blob.center_x = 90.0;
        blob.center_y = 70.0;
        blob.n_pixels = 0;
        Rng rng(1);
        CHECK(render_blob(black, blob, roi, cfg, rng) == black);
    }
    SUBCASE("degenerate sigma collapses to round(center)") {
        BlobSpec blob;
        blob.center_x = 100.3;
        blob.center_y = 80.6;
        blob.sigma_x = 1e-9;
        blob.sigma_y = 1e-9;
        blob.n_pixels = 50;
        Rng rng(2);
        const RgbImage out = render_blob(black, blob, roi, cfg, rng);
        CHECK(diff_pixel_count(out, black) == 1);
        CHECK(out.at(100, 81) != Rgb{0, 0, 0});
    }
    SUBCASE("sample centroid stays near the blob center") {
        BlobSpec blob;
        blob.center_x = 95.0;
        blob.center_y = 80.0;
        blob.sigma_x = 5.0;
        blob.sigma_y = 5.0;
        blob.n_pixels = 10000;
        blob.hue_seed = 7;
        Rng rng(3);
        const RgbImage out = render_blob(black, blob, roi, cfg, rng);
        double sum_x = 0.0, sum_y = 0.0;
        std::size_t n = 0;
        for (int y = 0; y < out.height(); ++y)
            for (int x = 0; x < out.width(); ++x)
                if (out.at(x, y) != Rgb{0, 0, 0}) {
                    sum_x += x;
                    sum_y += y;
                    ++n;
                }
        REQUIRE(n > 500);
        // The raw-draw mean lands within 6*sigma/sqrt(n) = 0.3 px; collapsing
        // repeats to unique pixels reweights the tails, so allow twice that.
        CHECK(std::abs(sum_x / n - blob.center_x) <= 0.6);
        CHECK(std::abs(sum_y / n - blob.center_y) <= 0.6);

        // And the sampler itself obeys the 6-sigma LLN bound.
        Rng fresh(4);
        double mean = 0.0;
        for (int i = 0; i < 10000; ++i) mean += fresh.normal(0.0, 5.0);
        mean /= 10000.0;
        CHECK(std::abs(mean) <= 6.0 * 5.0 / std::sqrt(10000.0));
    }
    SUBCASE("modified pixel count never exceeds n_pixels") {
        BlobSpec blob;
        blob.center_x = 90.0;
        blob.center_y = 70.0;
        blob.sigma_x = 3.0;
        blob.sigma_y = 3.0;
        blob.n_pixels = 120;
        Rng rng(5);
        const RgbImage out = render_blob(black, blob, roi, cfg, rng);
        CHECK(diff_pixel_count(out, black) <= 120);
    }
    SUBCASE("center outside the roi is rejected") {
        BlobSpec blob;
        blob.center_x = 5.0;
        blob.center_y = 5.0;
        Rng rng(6);
        CHECK_THROWS_AS(render_blob(black, blob, roi, cfg, rng), ConfigError);
    }
    SUBCASE("density cap is enforced") {
        BlobSpec blob;
        blob.center_x = 90.0;
        blob.center_y = 70.0;
        blob.sigma_x = 1.0;
        blob.sigma_y = 1.0;
        blob.n_pixels = 1000; // cap is 10 * 2*pi
        Rng rng(7);
        CHECK_THROWS_WITH_AS(render_blob(black, blob, roi, cfg, rng),
                             doctest::Contains("density cap"), ConfigError);
    }
}

TEST_CASE("simulate_vegetation") {
    const int w = 700, h = 400;
    const Rect roi{50, 100, 600, 300};
    const RgbImage base(w, h, {100, 100, 100});
    const TrackGeometry geometry = flat_geometry(w, h, roi);
    VegetationConfig cfg;

    SUBCASE("zero-blob range leaves the image unchanged") {
        VegetationConfig zero = cfg;
        zero.level = VegetationLevel::sparse;
        zero.sparse_blobs = {0, 0};
        const auto [out, specs] = simulate_vegetation(base, geometry, zero, 5);
        CHECK(out == base);
        CHECK(specs.empty());
    }
    SUBCASE("deterministic for a fixed seed") {
        const auto [a, specs_a] = simulate_vegetation(base, geometry, cfg, 77);
        const auto [b, specs_b] = simulate_vegetation(base, geometry, cfg, 77);
        CHECK(a == b);
        REQUIRE(specs_a.size() == specs_b.size());
        for (std::size_t i = 0; i < specs_a.size(); ++i) {
            CHECK(specs_a[i].center_x == specs_b[i].center_x);
            CHECK(specs_a[i].hue_seed == specs_b[i].hue_seed);
        }
    }
    SUBCASE("different seeds give different placements") {
        const auto [a, specs_a] = simulate_vegetation(base, geometry, cfg, 1);
        const auto [b, specs_b] = simulate_vegetation(base, geometry, cfg, 2);
        CHECK((specs_a.size() != specs_b.size() ||
               specs_a[0].center_x != specs_b[0].center_x));
    }
    SUBCASE("all modifications stay in the roi and read green") {
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            const VegetationLevel level = seed % 3 == 0   ? VegetationLevel::sparse
                                          : seed % 3 == 1 ? VegetationLevel::medium
                                                          : VegetationLevel::high;
            VegetationConfig c = cfg;
            c.level = level;
            const auto [out, specs] = simulate_vegetation(base, geometry, c, seed);

            const CountRange& range = c.blob_count_range(level);
            CHECK(specs.size() >= range.min);
            CHECK(specs.size() <= range.max);

            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const Rgb p = out.at(x, y);
                    if (p == base.at(x, y)) continue;
                    CHECK(roi.contains(x, y));
                    CHECK(p.g > p.r);
                    CHECK(p.g > p.b);
                }
            }
        }
    }
    SUBCASE("roi outside the image is rejected") {
        TrackGeometry bad = geometry;
        bad.roi = Rect{200, 200, 600, 300};
        CHECK_THROWS_AS(simulate_vegetation(base, bad, cfg, 1), ConfigError);
    }
}

TEST_CASE("vegetation config validation") {
    VegetationConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    SUBCASE("level ranges must be ordered and disjoint") {
        VegetationConfig bad = cfg;
        bad.medium_blobs = {5, 15}; // overlaps sparse (2, 6)
        CHECK_THROWS_AS(bad.validate(), ConfigError);
        bad = cfg;
        bad.high_blobs = {10, 12}; // below medium max
        CHECK_THROWS_AS(bad.validate(), ConfigError);
    }
    SUBCASE("green must dominate") {
        VegetationConfig bad = cfg;
        bad.g_min = 70; // <= r_max = 80
        CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("green"), ConfigError);
    }
    SUBCASE("empty ranges are rejected") {
        VegetationConfig bad = cfg;
        bad.sigma_min = 9.0;
        bad.sigma_max = 2.0;
        CHECK_THROWS_AS(bad.validate(), ConfigError);
    }
}
