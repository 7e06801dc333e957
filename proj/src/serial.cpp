#include "bifold/serial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bifold/errors.hpp"

namespace bifold::serial {

namespace {

// Same fixed 4096-element block partition as the parallel kernels, so sums
// agree bit for bit. Within a block and across block partials the
// accumulation is plain left-to-right.
double blocked_sum(std::span<const double> xs) {
    constexpr std::size_t kBlock = 4096;
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    double total = 0.0;
    for (std::size_t lo = 0; lo < n; lo += kBlock) {
        const std::size_t hi = std::min(lo + kBlock, n);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += xs[i];
        total += s;
    }
    return total;
}

}  // namespace

double divergence_score(const Mesh& mesh) {
    const auto edges = unique_edges(mesh);
    std::vector<double> lengths(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        lengths[i] = distance(mesh.vertices[static_cast<std::size_t>(edges[i].first)],
                              mesh.vertices[static_cast<std::size_t>(edges[i].second)]);

    const auto n = static_cast<double>(lengths.size());
    double max_len = lengths[0];
    for (double len : lengths) max_len = std::max(max_len, len);
    const double mean = blocked_sum(lengths) / n;

    std::vector<double> sq(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const double d = lengths[i] - mean;
        sq[i] = d * d;
    }
    const double stddev = std::sqrt(blocked_sum(sq) / n);
    if (stddev < 1e-12) return 0.0;
    return (max_len - mean) / stddev;
}

std::size_t nearest_vertex(std::span<const Vec3> vertices, const Vec3& query) {
    if (vertices.empty()) throw ValidationError("nearest_vertex on empty vertex set");
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec3 d = vertices[i] - query;
        const double d2 = d.dot(d);
        if (d2 < best_d2) {
            best_d2 = d2;
            best_i = i;
        }
    }
    return best_i;
}

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

    double peak = 0.0;
    for (double v : map.values) peak = std::max(peak, v);
    for (double& v : map.values) v /= peak;
    return map;
}

PixelIndex argmax_position(const Heatmap& map) {
    if (map.values.empty()) throw ValidationError("argmax of an empty heatmap");
    double best = 0.0;
    std::ptrdiff_t best_i = -1;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(map.values.size()); ++i) {
        const double v = map.values[static_cast<std::size_t>(i)];
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    if (best_i < 0) throw ValidationError("no peak: heatmap is all zero");
    return PixelIndex{static_cast<int>(best_i / map.width),
                      static_cast<int>(best_i % map.width)};
}

Distribution to_distribution(const Heatmap& map) {
    const double total = blocked_sum(map.values);
    if (!(total > 0.0)) throw ValidationError("cannot normalize an all-zero heatmap");
    Distribution dist;
    dist.height = map.height;
    dist.width = map.width;
    dist.values.resize(map.values.size());
    for (std::size_t i = 0; i < map.values.size(); ++i)
        dist.values[i] = map.values[i] / total;
    return dist;
}

double mask_distance(const Pixel& pixel, const PixelMask& mask) {
    if (mask.height <= 0 || mask.width <= 0 ||
        mask.values.size() != static_cast<std::size_t>(mask.height) * mask.width)
        throw ValidationError("mask dimensions do not match its buffer");
    if (pixel.row < 0.0 || pixel.row > mask.height - 1 || pixel.col < 0.0 ||
        pixel.col > mask.width - 1)
        throw ValidationError("pixel outside the image in mask_distance");

    const int r0 = static_cast<int>(std::llround(pixel.row));
    const int c0 = static_cast<int>(std::llround(pixel.col));
    if (mask.at(r0, c0)) return 0.0;

    if (mask_pixel_count(mask) == 0)
        throw ValidationError("mask has no pixels set in mask_distance");

    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < mask.height; ++r) {
        for (int c = 0; c < mask.width; ++c) {
            if (!mask.at(r, c)) continue;
            const double dr = pixel.row - r;
            const double dc = pixel.col - c;
            best = std::min(best, dr * dr + dc * dc);
        }
    }
    return std::sqrt(best);
}

std::int64_t mask_pixel_count(const PixelMask& mask) {
    std::int64_t count = 0;
    for (std::uint8_t v : mask.values) count += v != 0 ? 1 : 0;
    return count;
}

namespace {

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
    for (std::size_t i = 0; i < preds.size(); ++i) {
        double d = std::numeric_limits<double>::infinity();
        for (const Pixel& gt : gts[i]) {
            const double dr = preds[i].row - gt.row;
            const double dc = preds[i].col - gt.col;
            d = std::min(d, std::sqrt(dr * dr + dc * dc));
        }
        dist[i] = d;
    }
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
        for (double v : dist.values) below += (strict ? v < p : v <= p) ? 1 : 0;
        if (!strict) below -= 1;
        sum += 100.0 * static_cast<double>(below) / static_cast<double>(total);
    }
    return sum / static_cast<double>(gts.size());
}

}  // namespace bifold::serial
