#include "bifold/geometry.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>

#include "bifold/errors.hpp"
#include "bifold/par.hpp"

namespace bifold {

void validate_mesh(const Mesh& mesh) {
    if (mesh.vertices.size() < 3)
        throw ValidationError("mesh needs at least 3 vertices, got " +
                              std::to_string(mesh.vertices.size()));
    if (mesh.faces.empty()) throw ValidationError("mesh needs at least 1 face");
    const auto n = static_cast<std::int32_t>(mesh.vertices.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const Face& face = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            if (face[k] < 0 || face[k] >= n)
                throw ValidationError("face index out of range: faces[" +
                                      std::to_string(f) + "][" + std::to_string(k) +
                                      "] = " + std::to_string(face[k]));
        }
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
            throw ValidationError("face repeats a vertex: faces[" + std::to_string(f) + "]");
    }
}

void validate_nocs_pair(const Mesh& sim, const NocsMesh& nocs) {
    validate_mesh(sim);
    if (nocs.vertices.size() != sim.vertices.size())
        throw ValidationError("nocs vertex count mismatch: " +
                              std::to_string(nocs.vertices.size()) + " vs " +
                              std::to_string(sim.vertices.size()));
    for (std::size_t i = 0; i < nocs.vertices.size(); ++i) {
        const Vec3& v = nocs.vertices[i];
        const bool ok = v.x >= 0.0 && v.x <= 1.0 && v.y >= 0.0 && v.y <= 1.0 &&
                        v.z >= 0.0 && v.z <= 1.0;
        if (!ok)
            throw ValidationError("nocs coordinate out of range at vertex " +
                                  std::to_string(i));
    }
}

std::vector<std::pair<std::int32_t, std::int32_t>> unique_edges(const Mesh& mesh) {
    validate_mesh(mesh);
    std::vector<std::uint64_t> keys;
    keys.reserve(mesh.faces.size() * 3);
    for (const Face& f : mesh.faces) {
        for (int k = 0; k < 3; ++k) {
            const std::int32_t a = f[k];
            const std::int32_t b = f[(k + 1) % 3];
            const std::uint64_t lo = static_cast<std::uint32_t>(std::min(a, b));
            const std::uint64_t hi = static_cast<std::uint32_t>(std::max(a, b));
            keys.push_back((lo << 32) | hi);
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    edges.reserve(keys.size());
    for (std::uint64_t k : keys)
        edges.emplace_back(static_cast<std::int32_t>(k >> 32),
                           static_cast<std::int32_t>(k & 0xffffffffu));
    return edges;
}

std::vector<double> edge_lengths(const Mesh& mesh) {
    const auto edges = unique_edges(mesh);
    std::vector<double> lengths(edges.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(edges.size()); ++i) {
        const auto& [a, b] = edges[static_cast<std::size_t>(i)];
        lengths[static_cast<std::size_t>(i)] =
            distance(mesh.vertices[static_cast<std::size_t>(a)],
                     mesh.vertices[static_cast<std::size_t>(b)]);
    }
    return lengths;
}

namespace {

double score_from_lengths(std::span<const double> lengths) {
    const auto n = static_cast<double>(lengths.size());
    double max_len = lengths[0];
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : max_len)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(lengths.size()); ++i)
        max_len = std::max(max_len, lengths[static_cast<std::size_t>(i)]);

    const double mean = par::block_sum(lengths) / n;
    std::vector<double> sq(lengths.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(lengths.size()); ++i) {
        const double d = lengths[static_cast<std::size_t>(i)] - mean;
        sq[static_cast<std::size_t>(i)] = d * d;
    }
    const double stddev = std::sqrt(par::block_sum(sq) / n);
    if (stddev < 1e-12) return 0.0;
    return (max_len - mean) / stddev;
}

}  // namespace

double divergence_score(const Mesh& mesh) {
    return score_from_lengths(edge_lengths(mesh));
}

bool is_divergent(const Mesh& sim, const NocsMesh& nocs, double ratio_threshold) {
    validate_nocs_pair(sim, nocs);
    const double reference = divergence_score(Mesh{nocs.vertices, sim.faces});
    if (reference < 1e-12) return true;
    return divergence_score(sim) / reference > ratio_threshold;
}

std::size_t nearest_vertex(std::span<const Vec3> vertices, const Vec3& query) {
    if (vertices.empty()) throw ValidationError("nearest_vertex on empty vertex set");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(vertices.size());
    double best_d2 = std::numeric_limits<double>::infinity();
    std::ptrdiff_t best_i = 0;
#ifdef _OPENMP
#pragma omp parallel
    {
        double local_d2 = std::numeric_limits<double>::infinity();
        std::ptrdiff_t local_i = 0;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const Vec3 d = vertices[static_cast<std::size_t>(i)] - query;
            const double d2 = d.dot(d);
            if (d2 < local_d2) {
                local_d2 = d2;
                local_i = i;
            }
        }
#pragma omp critical
        {
            if (local_d2 < best_d2 || (local_d2 == best_d2 && local_i < best_i)) {
                best_d2 = local_d2;
                best_i = local_i;
            }
        }
    }
#else
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const Vec3 d = vertices[static_cast<std::size_t>(i)] - query;
        const double d2 = d.dot(d);
        if (d2 < best_d2) {
            best_d2 = d2;
            best_i = i;
        }
    }
#endif
    return static_cast<std::size_t>(best_i);
}

}  // namespace bifold
