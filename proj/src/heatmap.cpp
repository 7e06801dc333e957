#include "bifold/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bifold/errors.hpp"
#include "bifold/par.hpp"

namespace bifold {

Heatmap gaussian_heatmap(std::span<const Pixel> centers, int height, int width,
                         double sigma2) {
    if (height <= 0 || width <= 0)
        throw ValidationError("heatmap size must be positive");
    if (centers.empty()) throw ValidationError("gaussian_heatmap needs at least one center");
    if (!(sigma2 > 0.0)) throw ValidationError("sigma2 must be positive");
    for (const Pixel& c : centers) {
        if (c.row < 0.0 || c.row > height - 1 || c.col < 0.0 || c.col > width - 1)
            throw ValidationError("heatmap center outside the image");
    }

    Heatmap map;
    map.height = height;
    map.width = width;
    map.values.assign(static_cast<std::size_t>(height) * width, 0.0);

    const double inv = 1.0 / (2.0 * sigma2);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            double sum = 0.0;
            for (const Pixel& center : centers) {
                const double dr = r - center.row;
                const double dc = c - center.col;
                sum += std::exp(-(dr * dr + dc * dc) * inv);
            }
            map.at(r, c) = sum;
        }
    }

    // The equal mixture weights 1/K cancel under max-rescaling, so dividing
    // by the raw maximum alone already yields the normalized mixture.
    double peak = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : peak)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(map.values.size()); ++i)
        peak = std::max(peak, map.values[static_cast<std::size_t>(i)]);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(map.values.size()); ++i)
        map.values[static_cast<std::size_t>(i)] /= peak;

    return map;
}

Heatmap apply_mask(const Heatmap& map, const PixelMask& mask) {
    if (map.height != mask.height || map.width != mask.width)
        throw ValidationError("heatmap and mask dimensions differ: " +
                              std::to_string(map.height) + "x" + std::to_string(map.width) +
                              " vs " + std::to_string(mask.height) + "x" +
                              std::to_string(mask.width));
    Heatmap out = map;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.values.size()); ++i) {
        if (mask.values[static_cast<std::size_t>(i)] == 0)
            out.values[static_cast<std::size_t>(i)] = 0.0;
    }
    return out;
}

PixelIndex argmax_position(const Heatmap& map) {
    if (map.values.empty()) throw ValidationError("argmax of an empty heatmap");

    double best = 0.0;
    std::ptrdiff_t best_i = -1;
#ifdef _OPENMP
#pragma omp parallel
    {
        double local = 0.0;
        std::ptrdiff_t local_i = -1;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(map.values.size());
             ++i) {
            const double v = map.values[static_cast<std::size_t>(i)];
            if (v > local) {
                local = v;
                local_i = i;
            }
        }
#pragma omp critical
        {
            // Row-major index order doubles as (row, then column) tie-break.
            if (local > best || (local == best && local_i >= 0 &&
                                 (best_i < 0 || local_i < best_i))) {
                best = local;
                best_i = local_i;
            }
        }
    }
#else
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(map.values.size()); ++i) {
        const double v = map.values[static_cast<std::size_t>(i)];
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
#endif
    if (best_i < 0) throw ValidationError("no peak: heatmap is all zero");
    return PixelIndex{static_cast<int>(best_i / map.width),
                      static_cast<int>(best_i % map.width)};
}

Distribution to_distribution(const Heatmap& map) {
    const double total = par::block_sum(map.values);
    if (!(total > 0.0))
        throw ValidationError("cannot normalize an all-zero heatmap");
    Distribution dist;
    dist.height = map.height;
    dist.width = map.width;
    dist.values.resize(map.values.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(map.values.size()); ++i)
        dist.values[static_cast<std::size_t>(i)] =
            map.values[static_cast<std::size_t>(i)] / total;
    return dist;
}

}  // namespace bifold
