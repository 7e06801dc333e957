#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bifold/geometry.hpp"
#include "bifold/image.hpp"

// Single-threaded reference implementations of the parallel kernels. They
// are deliberately written as plain loops; the test suite checks the
// OpenMP kernels against them and the benchmark compares their speed.
namespace bifold::serial {

double divergence_score(const Mesh& mesh);
std::size_t nearest_vertex(std::span<const Vec3> vertices, const Vec3& query);

Heatmap gaussian_heatmap(std::span<const Pixel> centers, int height, int width,
                         double sigma2 = 5.0);
PixelIndex argmax_position(const Heatmap& map);
Distribution to_distribution(const Heatmap& map);

double mask_distance(const Pixel& pixel, const PixelMask& mask);
std::int64_t mask_pixel_count(const PixelMask& mask);

double ap_at(std::span<const Pixel> preds,
             std::span<const std::vector<Pixel>> gts, double tau);
double kp_error(std::span<const Pixel> preds,
                std::span<const std::vector<Pixel>> gts, bool squared = false);
double quantile(const Heatmap& map, std::span<const PixelIndex> gts, bool strict = true);

}  // namespace bifold::serial
