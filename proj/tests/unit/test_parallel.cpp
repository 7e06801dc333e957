#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bifold/camera.hpp"
#include "bifold/geometry.hpp"
#include "bifold/heatmap.hpp"
#include "bifold/metrics.hpp"
#include "bifold/par.hpp"
#include "bifold/rng.hpp"
#include "bifold/serial.hpp"
#include "support/fixtures.hpp"

using namespace bifold;

namespace {

std::vector<double> random_values(Rng& rng, std::size_t n) {
    std::vector<double> xs(n);
    for (double& x : xs) x = rng.u01() * 2.0 - 1.0;
    return xs;
}

// Large rumpled mesh: enough unique edges to span several summation blocks.
Mesh rumpled_grid(int n, unsigned long long seed) {
    Mesh mesh = fixtures::grid_mesh(n, 0.013);
    Rng rng(seed);
    for (Vec3& v : mesh.vertices) v.z = 0.05 * rng.u01();
    return mesh;
}

Heatmap random_heatmap(int height, int width, std::size_t centers, Rng& rng) {
    std::vector<Pixel> pts(centers);
    for (Pixel& p : pts) {
        p.row = rng.u01() * (height - 1);
        p.col = rng.u01() * (width - 1);
    }
    return gaussian_heatmap(pts, height, width, 5.0);
}

}  // namespace

TEST_SUITE("parallel") {

TEST_CASE("block_sum matches plain accumulation within a single block") {
    Rng rng(101);
    const std::vector<double> xs = random_values(rng, par::kSumBlock);
    double plain = 0.0;
    for (double x : xs) plain += x;
    CHECK(par::block_sum(xs) == plain);
    CHECK(par::block_sum(std::vector<double>{}) == 0.0);
    CHECK(par::block_sum(std::vector<double>{0.3}) == 0.3);
}

TEST_CASE("block_sum uses the same fixed partition at any thread count") {
    Rng rng(102);
    const std::vector<double> xs = random_values(rng, 3 * par::kSumBlock + 123);
    double expected = 0.0;
    for (std::size_t lo = 0; lo < xs.size(); lo += par::kSumBlock) {
        const std::size_t hi = std::min(lo + par::kSumBlock, xs.size());
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += xs[i];
        expected += s;
    }
    CHECK(par::block_sum(xs) == expected);
}

TEST_CASE("pairwise_sum is exact on power-of-two runs of one value") {
    CHECK(par::pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(par::pairwise_sum(std::vector<double>{0.7}) == 0.7);
    CHECK(par::pairwise_sum(std::vector<double>{1.0, 2.0, 3.0}) == 6.0);
    CHECK(par::pairwise_sum(std::vector<double>(4, 0.0125)) == 0.05);
    CHECK(par::pairwise_sum(std::vector<double>(1024, 0.1)) == 102.4);
}

TEST_CASE("divergence scores agree bitwise with the serial reference") {
    for (int n : {9, 33, 80}) {
        const Mesh mesh = rumpled_grid(n, 200 + static_cast<unsigned long long>(n));
        CAPTURE(n);
        CHECK(divergence_score(mesh) == serial::divergence_score(mesh));
    }
}

TEST_CASE("nearest_vertex agrees with the serial scan, ties included") {
    Rng rng(103);
    std::vector<Vec3> cloud(20000);
    for (Vec3& v : cloud)
        v = {rng.u01() * 4.0 - 2.0, rng.u01() * 4.0 - 2.0, rng.u01()};
    cloud[7777] = cloud[100];  // duplicate position: lowest index must win

    for (int k = 0; k < 50; ++k) {
        const Vec3 query{rng.u01() * 4.0 - 2.0, rng.u01() * 4.0 - 2.0, rng.u01()};
        CHECK(nearest_vertex(cloud, query) == serial::nearest_vertex(cloud, query));
    }
    CHECK(nearest_vertex(cloud, cloud[100]) == 100);
    CHECK(serial::nearest_vertex(cloud, cloud[100]) == 100);
}

TEST_CASE("heatmap construction agrees bitwise with the serial rasterizer") {
    Rng rng(104);
    std::vector<Pixel> centers(40);
    for (Pixel& p : centers) {
        p.row = rng.u01() * 383.0;
        p.col = rng.u01() * 383.0;
    }
    const Heatmap par_map = gaussian_heatmap(centers, 384, 384, 5.0);
    const Heatmap ser_map = serial::gaussian_heatmap(centers, 384, 384, 5.0);
    REQUIRE(par_map.values.size() == ser_map.values.size());
    for (std::size_t i = 0; i < par_map.values.size(); ++i)
        CHECK(par_map.values[i] == ser_map.values[i]);
}

TEST_CASE("argmax and normalization agree with the serial reference") {
    Rng rng(105);
    const Heatmap map = random_heatmap(384, 384, 25, rng);

    const PixelIndex par_peak = argmax_position(map);
    const PixelIndex ser_peak = serial::argmax_position(map);
    CHECK(par_peak.row == ser_peak.row);
    CHECK(par_peak.col == ser_peak.col);

    const Distribution par_dist = to_distribution(map);
    const Distribution ser_dist = serial::to_distribution(map);
    REQUIRE(par_dist.values.size() == ser_dist.values.size());
    for (std::size_t i = 0; i < par_dist.values.size(); ++i)
        CHECK(par_dist.values[i] == ser_dist.values[i]);

    // A hand-built tie: both implementations must report the row-major first.
    Heatmap tied;
    tied.height = 120;
    tied.width = 130;
    tied.values.assign(120 * 130, 0.25);
    tied.at(40, 90) = 1.0;
    tied.at(90, 5) = 1.0;
    CHECK(argmax_position(tied).row == 40);
    CHECK(argmax_position(tied).col == 90);
    CHECK(serial::argmax_position(tied).row == 40);
    CHECK(serial::argmax_position(tied).col == 90);
}

TEST_CASE("mask kernels agree with the serial scans") {
    Rng rng(106);
    PixelMask mask;
    mask.height = 300;
    mask.width = 301;
    mask.values.assign(300 * 301, 0);
    for (int k = 0; k < 30; ++k) {
        const auto r = rng.index(300);
        const auto c = rng.index(301);
        mask.values[r * 301 + c] = 1;
    }
    CHECK(mask_pixel_count(mask) == serial::mask_pixel_count(mask));

    for (int k = 0; k < 100; ++k) {
        const Pixel probe{rng.u01() * 299.0, rng.u01() * 300.0};
        CAPTURE(probe.row);
        CAPTURE(probe.col);
        CHECK(mask_distance(probe, mask) == serial::mask_distance(probe, mask));
    }
}

TEST_CASE("keypoint metrics agree with the serial reference on large batches") {
    Rng rng(107);
    const std::size_t n = 20000;
    std::vector<Pixel> preds(n);
    std::vector<std::vector<Pixel>> gts(n);
    for (std::size_t i = 0; i < n; ++i) {
        preds[i] = {rng.u01() * 383.0, rng.u01() * 383.0};
        gts[i].resize(1 + rng.index(3));
        for (Pixel& gt : gts[i]) gt = {rng.u01() * 383.0, rng.u01() * 383.0};
    }

    for (double tau : {0.0, 2.0, 7.5, 40.0})
        CHECK(ap_at(preds, gts, tau) == serial::ap_at(preds, gts, tau));
    CHECK(kp_error(preds, gts, false) == serial::kp_error(preds, gts, false));
    CHECK(kp_error(preds, gts, true) == serial::kp_error(preds, gts, true));
}

TEST_CASE("quantile ranks agree with the serial reference") {
    Rng rng(108);
    const Heatmap map = random_heatmap(384, 384, 12, rng);
    std::vector<PixelIndex> gts(25);
    for (PixelIndex& gt : gts)
        gt = {static_cast<int>(rng.index(384)), static_cast<int>(rng.index(384))};

    CHECK(quantile(map, gts, true) == serial::quantile(map, gts, true));
    CHECK(quantile(map, gts, false) == serial::quantile(map, gts, false));
}

}  // TEST_SUITE
