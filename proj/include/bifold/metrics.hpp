#pragma once

#include <span>
#include <vector>

#include "bifold/geometry.hpp"
#include "bifold/image.hpp"

namespace bifold {

// Percentage of predictions whose distance to the nearest pixel of their
// ground-truth set is at most tau.
double ap_at(std::span<const Pixel> preds,
             std::span<const std::vector<Pixel>> gts, double tau);

// Mean distance (pixels) to the nearest ground-truth pixel; the squared
// variant averages squared distances instead.
double kp_error(std::span<const Pixel> preds,
                std::span<const std::vector<Pixel>> gts, bool squared = false);

// Mean over ground-truth pixels of the percentage of pixels whose
// probability is strictly below (weak: at or below, excluding the pixel
// itself) the ground-truth pixel's probability.
double quantile(const Heatmap& map, std::span<const PixelIndex> gts, bool strict = true);

struct IouResult {
    double value = 0.0;
    bool success = false;  // value >= threshold
};

// Intersection over union of two masks; an empty union counts as 1.
IouResult iou(const PixelMask& a, const PixelMask& b, double success_threshold = 0.8);

struct VertexErrorResult {
    double meters = 0.0;
    bool success = false;  // meters strictly below threshold
};

// Mean distance between corresponding vertices.
VertexErrorResult vertex_error(std::span<const Vec3> a, std::span<const Vec3> b,
                               double success_threshold = 0.0125);
VertexErrorResult vertex_error(const Mesh& a, const Mesh& b,
                               double success_threshold = 0.0125);

inline double error_mm(double meters) { return meters * 1000.0; }

}  // namespace bifold
