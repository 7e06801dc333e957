#pragma once

#include <span>

#include "bifold/image.hpp"

namespace bifold {

// Equal-weight Gaussian mixture rasterized on the pixel grid and rescaled so
// the global maximum is exactly 1. sigma2 is the per-axis variance.
Heatmap gaussian_heatmap(std::span<const Pixel> centers, int height, int width,
                         double sigma2 = 5.0);

// Zeroes every value outside the mask. The result is generally no longer
// max-normalized.
Heatmap apply_mask(const Heatmap& map, const PixelMask& mask);

// Position of the maximum value; ties break to the smallest row, then the
// smallest column. Throws ValidationError("no peak ...") on all-zero maps.
PixelIndex argmax_position(const Heatmap& map);

// Divides by the total mass so values sum to 1.
Distribution to_distribution(const Heatmap& map);

}  // namespace bifold
