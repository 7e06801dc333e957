#include "bifold/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "bifold/errors.hpp"
#include "bifold/heatmap.hpp"
#include "bifold/par.hpp"

namespace bifold {

namespace {

// Distance from one prediction to the closest pixel of its ground-truth set.
double nearest_gt_distance(const Pixel& pred, const std::vector<Pixel>& gts) {
    double best = std::numeric_limits<double>::infinity();
    for (const Pixel& gt : gts) {
        const double dr = pred.row - gt.row;
        const double dc = pred.col - gt.col;
        best = std::min(best, std::sqrt(dr * dr + dc * dc));
    }
    return best;
}

std::vector<double> all_distances(std::span<const Pixel> preds,
                                  std::span<const std::vector<Pixel>> gts) {
    if (preds.size() != gts.size())
        throw ValidationError("prediction/ground-truth count mismatch: " +
                              std::to_string(preds.size()) + " vs " +
                              std::to_string(gts.size()));
    if (preds.empty()) throw ValidationError("no instances to evaluate");
    for (const auto& set : gts)
        if (set.empty()) throw ValidationError("empty ground-truth pixel set");

    std::vector<double> dist(preds.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(preds.size()); ++i)
        dist[static_cast<std::size_t>(i)] =
            nearest_gt_distance(preds[static_cast<std::size_t>(i)],
                                gts[static_cast<std::size_t>(i)]);
    return dist;
}

}  // namespace

double ap_at(std::span<const Pixel> preds, std::span<const std::vector<Pixel>> gts,
             double tau) {
    if (tau < 0.0) throw ValidationError("tau must be non-negative");
    const std::vector<double> dist = all_distances(preds, gts);
    std::int64_t hits = 0;
    for (double d : dist) hits += d <= tau ? 1 : 0;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(dist.size());
}

double kp_error(std::span<const Pixel> preds, std::span<const std::vector<Pixel>> gts,
                bool squared) {
    const std::vector<double> dist = all_distances(preds, gts);
    // Plain in-order accumulation; the division happens once at the end.
    double sum = 0.0;
    for (double d : dist) sum += squared ? d * d : d;
    return sum / static_cast<double>(dist.size());
}

double quantile(const Heatmap& map, std::span<const PixelIndex> gts, bool strict) {
    if (gts.empty()) throw ValidationError("quantile needs at least one ground-truth pixel");
    const Distribution dist = to_distribution(map);
    const auto total = static_cast<std::int64_t>(dist.values.size());

    double sum = 0.0;
    for (const PixelIndex& gt : gts) {
        if (gt.row < 0 || gt.row >= dist.height || gt.col < 0 || gt.col >= dist.width)
            throw ValidationError("ground-truth pixel outside the image in quantile");
        const double p =
            dist.values[static_cast<std::size_t>(gt.row) * dist.width + gt.col];
        std::int64_t below = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : below)
#endif
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(dist.values.size());
             ++i) {
            const double v = dist.values[static_cast<std::size_t>(i)];
            below += (strict ? v < p : v <= p) ? 1 : 0;
        }
        if (!strict) below -= 1;  // the pixel itself always ties
        sum += 100.0 * static_cast<double>(below) / static_cast<double>(total);
    }
    return sum / static_cast<double>(gts.size());
}

IouResult iou(const PixelMask& a, const PixelMask& b, double success_threshold) {
    if (a.height != b.height || a.width != b.width)
        throw ValidationError("mask dimensions differ in iou");
    if (a.values.size() != static_cast<std::size_t>(a.height) * a.width ||
        b.values.size() != static_cast<std::size_t>(b.height) * b.width)
        throw ValidationError("mask dimensions do not match their buffers");

    std::int64_t inter = 0, uni = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : inter, uni)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.values.size()); ++i) {
        const bool in_a = a.values[static_cast<std::size_t>(i)] != 0;
        const bool in_b = b.values[static_cast<std::size_t>(i)] != 0;
        inter += (in_a && in_b) ? 1 : 0;
        uni += (in_a || in_b) ? 1 : 0;
    }

    IouResult out;
    out.value = uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
    out.success = out.value >= success_threshold;
    return out;
}

VertexErrorResult vertex_error(std::span<const Vec3> a, std::span<const Vec3> b,
                               double success_threshold) {
    if (a.size() != b.size())
        throw ValidationError("vertex count mismatch in vertex_error: " +
                              std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    if (a.empty()) throw ValidationError("vertex_error on empty meshes");

    std::vector<double> dist(a.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(a.size()); ++i)
        dist[static_cast<std::size_t>(i)] = distance(a[static_cast<std::size_t>(i)],
                                                     b[static_cast<std::size_t>(i)]);

    VertexErrorResult out;
    out.meters = par::pairwise_sum(dist) / static_cast<double>(dist.size());
    out.success = out.meters < success_threshold;
    return out;
}

VertexErrorResult vertex_error(const Mesh& a, const Mesh& b, double success_threshold) {
    validate_mesh(a);
    validate_mesh(b);
    return vertex_error(std::span<const Vec3>(a.vertices),
                        std::span<const Vec3>(b.vertices), success_threshold);
}

}  // namespace bifold
