#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "bifold/camera.hpp"
#include "bifold/geometry.hpp"
#include "bifold/heatmap.hpp"
#include "bifold/metrics.hpp"
#include "bifold/par.hpp"
#include "bifold/rng.hpp"
#include "bifold/serial.hpp"

namespace {

using bifold::Heatmap;
using bifold::Mesh;
using bifold::Pixel;
using bifold::PixelIndex;
using bifold::PixelMask;
using bifold::Rng;
using bifold::Vec3;

double time_ms(const std::function<void()>& fn, int repeats = 5) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

Mesh grid_mesh(int n, Rng& rng) {
    Mesh mesh;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            mesh.vertices.push_back(
                {i * 0.01 + rng.uniform(-0.002, 0.002),
                 j * 0.01 + rng.uniform(-0.002, 0.002), rng.uniform(-0.002, 0.002)});
    for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
            const auto v = [n](int a, int b) { return b * n + a; };
            mesh.faces.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
            mesh.faces.push_back({v(i, j), v(i + 1, j + 1), v(i, j + 1)});
        }
    }
    return mesh;
}

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-18s %10.2f ms %10.2f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "results match" : "MISMATCH");
}

}  // namespace

int main() {
    Rng rng(20240915);

    std::printf("threads: %d\n", bifold::par::max_threads());
    std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const Mesh mesh = grid_mesh(400, rng);
        double serial = 0.0, parallel = 0.0;
        const double t_serial =
            time_ms([&] { serial = bifold::serial::divergence_score(mesh); });
        const double t_parallel =
            time_ms([&] { parallel = bifold::divergence_score(mesh); });
        report("divergence_score", t_serial, t_parallel, serial == parallel);
    }

    {
        std::vector<Vec3> cloud;
        for (int i = 0; i < 400000; ++i)
            cloud.push_back({rng.u01(), rng.u01(), rng.u01()});
        std::vector<Vec3> queries;
        for (int i = 0; i < 64; ++i)
            queries.push_back({rng.u01(), rng.u01(), rng.u01()});
        std::vector<std::size_t> serial(queries.size()), parallel(queries.size());
        const double t_serial = time_ms([&] {
            for (std::size_t q = 0; q < queries.size(); ++q)
                serial[q] = bifold::serial::nearest_vertex(cloud, queries[q]);
        });
        const double t_parallel = time_ms([&] {
            for (std::size_t q = 0; q < queries.size(); ++q)
                parallel[q] = bifold::nearest_vertex(cloud, queries[q]);
        });
        report("nearest_vertex", t_serial, t_parallel, serial == parallel);
    }

    std::vector<Pixel> centers;
    for (int i = 0; i < 16; ++i)
        centers.push_back({rng.uniform(0.0, 383.0), rng.uniform(0.0, 383.0)});
    Heatmap map;
    {
        Heatmap serial, parallel;
        const double t_serial =
            time_ms([&] { serial = bifold::serial::gaussian_heatmap(centers, 384, 384); });
        const double t_parallel =
            time_ms([&] { parallel = bifold::gaussian_heatmap(centers, 384, 384); });
        report("gaussian_heatmap", t_serial, t_parallel, serial.values == parallel.values);
        map = parallel;
    }

    {
        PixelIndex serial{}, parallel{};
        const double t_serial =
            time_ms([&] { serial = bifold::serial::argmax_position(map); });
        const double t_parallel = time_ms([&] { parallel = bifold::argmax_position(map); });
        report("argmax_position", t_serial, t_parallel, serial == parallel);
    }

    {
        std::vector<PixelIndex> gts;
        for (int i = 0; i < 16; ++i)
            gts.push_back({static_cast<int>(rng.index(384)), static_cast<int>(rng.index(384))});
        double serial = 0.0, parallel = 0.0;
        const double t_serial = time_ms([&] { serial = bifold::serial::quantile(map, gts); });
        const double t_parallel = time_ms([&] { parallel = bifold::quantile(map, gts); });
        report("quantile", t_serial, t_parallel, serial == parallel);
    }

    {
        PixelMask mask;
        mask.height = 384;
        mask.width = 384;
        mask.values.assign(384 * 384, 0);
        // A thin ring: plenty of pixels to scan, target usually off the mask.
        for (int r = 0; r < 384; ++r) {
            for (int c = 0; c < 384; ++c) {
                const double d = std::sqrt((r - 191.5) * (r - 191.5) +
                                           (c - 191.5) * (c - 191.5));
                if (d > 100.0 && d < 104.0) mask.values[r * 384 + c] = 1;
            }
        }
        std::vector<Pixel> probes;
        for (int i = 0; i < 64; ++i)
            probes.push_back({rng.uniform(0.0, 383.0), rng.uniform(0.0, 383.0)});
        std::vector<double> serial(probes.size()), parallel(probes.size());
        const double t_serial = time_ms([&] {
            for (std::size_t i = 0; i < probes.size(); ++i)
                serial[i] = bifold::serial::mask_distance(probes[i], mask);
        });
        const double t_parallel = time_ms([&] {
            for (std::size_t i = 0; i < probes.size(); ++i)
                parallel[i] = bifold::mask_distance(probes[i], mask);
        });
        report("mask_distance", t_serial, t_parallel, serial == parallel);
    }

    return 0;
}
