#include <doctest.h>

#include <cmath>
#include <vector>

#include "bifold/errors.hpp"
#include "bifold/heatmap.hpp"
#include "bifold/rng.hpp"
#include "support/oracles.hpp"

using namespace bifold;

TEST_SUITE_BEGIN("heatmap");

TEST_CASE("single-center heatmap follows the closed form") {
    const std::vector<Pixel> centers = {{20.0, 20.0}};
    const Heatmap map = gaussian_heatmap(centers, 49, 49, 5.0);

    // Peak of 1 at the center; e^(-d^2/10) elsewhere.
    CHECK(map.at(20, 20) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(map.at(20, 25) == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
    CHECK(map.at(23, 24) == doctest::Approx(std::exp(-2.5)).epsilon(1e-12));
    CHECK(map.at(20, 21) == doctest::Approx(std::exp(-0.1)).epsilon(1e-12));

    for (double v : map.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("multi-center heatmaps match the direct rasterization") {
    Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Pixel> centers;
        const int k = 1 + static_cast<int>(rng.index(6));
        for (int i = 0; i < k; ++i)
            centers.push_back({rng.uniform(0.0, 47.0), rng.uniform(0.0, 47.0)});
        const Heatmap got = gaussian_heatmap(centers, 48, 48, 5.0);
        const Heatmap want = oracle::gaussian_heatmap(centers, 48, 48, 5.0);
        REQUIRE(got.values.size() == want.values.size());
        for (std::size_t i = 0; i < got.values.size(); ++i)
            CHECK(got.values[i] == want.values[i]);
    }
}

TEST_CASE("heatmap maxima are exactly one") {
    Rng rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Pixel> centers = {{rng.uniform(0.0, 31.0), rng.uniform(0.0, 31.0)},
                                      {rng.uniform(0.0, 31.0), rng.uniform(0.0, 31.0)}};
        const Heatmap map = gaussian_heatmap(centers, 32, 32, 5.0);
        double peak = 0.0;
        for (double v : map.values) peak = std::max(peak, v);
        CHECK(peak == 1.0);
    }
}

TEST_CASE("gaussian_heatmap validates its inputs") {
    CHECK_THROWS_WITH_AS(gaussian_heatmap(std::vector<Pixel>{}, 8, 8, 5.0),
                         "gaussian_heatmap needs at least one center", ValidationError);
    const std::vector<Pixel> c = {{1.0, 1.0}};
    CHECK_THROWS_WITH_AS(gaussian_heatmap(c, 0, 8, 5.0), "heatmap size must be positive",
                         ValidationError);
    CHECK_THROWS_WITH_AS(gaussian_heatmap(c, 8, 8, 0.0), "sigma2 must be positive",
                         ValidationError);
    const std::vector<Pixel> outside = {{9.0, 1.0}};
    CHECK_THROWS_WITH_AS(gaussian_heatmap(outside, 8, 8, 5.0),
                         "heatmap center outside the image", ValidationError);
}

TEST_CASE("apply_mask zeroes outside and keeps values unrenormalized") {
    const std::vector<Pixel> centers = {{4.0, 4.0}};
    const Heatmap map = gaussian_heatmap(centers, 16, 16, 5.0);

    PixelMask mask;
    mask.height = 16;
    mask.width = 16;
    mask.values.assign(16 * 16, 0);
    for (int r = 8; r < 16; ++r)
        for (int c = 0; c < 16; ++c) mask.values[static_cast<std::size_t>(r) * 16 + c] = 1;

    const Heatmap masked = apply_mask(map, mask);
    // The peak at (4,4) is outside the mask, so the masked maximum drops
    // below 1 and is not rescaled back.
    double peak = 0.0;
    for (double v : masked.values) peak = std::max(peak, v);
    CHECK(peak < 1.0);
    CHECK(peak > 0.0);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c)
            CHECK(masked.at(r, c) == (r >= 8 ? map.at(r, c) : 0.0));

    PixelMask small;
    small.height = 8;
    small.width = 16;
    small.values.assign(8 * 16, 1);
    CHECK_THROWS_WITH_AS(apply_mask(map, small),
                         "heatmap and mask dimensions differ: 16x16 vs 8x16",
                         ValidationError);
}

TEST_CASE("argmax_position breaks ties towards small row then column") {
    Heatmap map;
    map.height = 8;
    map.width = 8;
    map.values.assign(64, 0.25);
    map.at(5, 2) = 1.0;
    map.at(3, 7) = 1.0;
    CHECK(argmax_position(map) == PixelIndex{3, 7});

    map.at(3, 4) = 1.0;
    CHECK(argmax_position(map) == PixelIndex{3, 4});

    // Random maps agree with the serial scan.
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        Heatmap random_map;
        random_map.height = 17;
        random_map.width = 13;
        for (int i = 0; i < 17 * 13; ++i) random_map.values.push_back(rng.u01());
        CHECK(argmax_position(random_map) == oracle::argmax_position(random_map));
    }

    Heatmap zeros;
    zeros.height = 4;
    zeros.width = 4;
    zeros.values.assign(16, 0.0);
    CHECK_THROWS_WITH_AS(argmax_position(zeros), "no peak: heatmap is all zero",
                         ValidationError);

    Heatmap empty;
    CHECK_THROWS_WITH_AS(argmax_position(empty), "argmax of an empty heatmap",
                         ValidationError);
}

TEST_CASE("to_distribution normalizes total mass to one") {
    const std::vector<Pixel> centers = {{3.0, 3.0}, {10.0, 12.0}};
    const Heatmap map = gaussian_heatmap(centers, 16, 16, 5.0);
    const Distribution dist = to_distribution(map);

    double total = 0.0;
    for (double v : dist.values) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // Ratios between pixels are preserved.
    CHECK(dist.values[5] / dist.values[40] ==
          doctest::Approx(map.values[5] / map.values[40]).epsilon(1e-12));

    Heatmap zeros;
    zeros.height = 2;
    zeros.width = 2;
    zeros.values.assign(4, 0.0);
    CHECK_THROWS_WITH_AS(to_distribution(zeros), "cannot normalize an all-zero heatmap",
                         ValidationError);
}

TEST_SUITE_END();
