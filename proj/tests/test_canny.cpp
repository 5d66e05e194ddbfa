#include <doctest.h>

#include "railgen/canny.hpp"
#include "support/testutil.hpp"

using namespace railgen;
using namespace railgen::testsupport;

TEST_CASE("constant image yields no edges") {
    GrayImage flat(16, 16, 128.0);
    const EdgeMap edges = canny(flat, {});
    CHECK(edges.edge_count() == 0);
}

TEST_CASE("ideal vertical step yields a single one-pixel column") {
    GrayImage step(16, 16, 0.0);
    for (int y = 0; y < 16; ++y)
        for (int x = 8; x < 16; ++x) step.set(x, y, 255.0);

    CannyParams params;
    params.low = 50.0;
    params.high = 100.0;
    const EdgeMap edges = canny(step, params);

    int column = -1;
    for (int y = 1; y < 15; ++y) {
        int row_edges = 0;
        int row_x = -1;
        for (int x = 0; x < 16; ++x) {
            if (edges.at(x, y)) {
                ++row_edges;
                row_x = x;
            }
        }
        CHECK(row_edges == 1);
        if (column < 0) column = row_x;
        CHECK(row_x == column); // one straight column, all interior rows
    }
    CHECK(column >= 6);
    CHECK(column <= 9); // at the step
}

TEST_CASE("raising the high threshold never adds edges") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const GrayImage img = random_gray_image(32, 32, rng);
        CannyParams loose;
        loose.low = 20.0;
        loose.high = 80.0;
        CannyParams strict = loose;
        strict.high = 100.0;
        const EdgeMap a = canny(img, loose);
        const EdgeMap b = canny(img, strict);
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x)
                if (b.at(x, y)) CHECK(a.at(x, y));
    }
}

TEST_CASE("every edge pixel clears the low threshold") {
    Rng rng(56);
    const GrayImage img = random_gray_image(48, 48, rng);
    CannyParams params;
    params.low = 30.0;
    params.high = 90.0;
    GrayImage magnitude;
    const EdgeMap edges = canny(img, params, &magnitude);
    CHECK(edges.edge_count() > 0); // random noise has strong gradients
    for (int y = 0; y < 48; ++y)
        for (int x = 0; x < 48; ++x)
            if (edges.at(x, y)) CHECK(magnitude.at(x, y) >= params.low);
}

TEST_CASE("threshold ordering is validated") {
    GrayImage img(8, 8, 0.0);
    CannyParams bad;
    bad.low = 100.0;
    bad.high = 100.0;
    CHECK_THROWS_AS(canny(img, bad), ConfigError);
    bad.low = -5.0;
    bad.high = 10.0;
    CHECK_THROWS_AS(canny(img, bad), ConfigError);
}
