#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bifold {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const { return *this / norm(); }

    bool operator==(const Vec3&) const = default;
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

using Face = std::array<std::int32_t, 3>;

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
};

// Canonical-space coordinates for a mesh; every component lies in [0, 1] and
// the topology is that of the paired world-space mesh.
struct NocsMesh {
    std::vector<Vec3> vertices;
};

void validate_mesh(const Mesh& mesh);
void validate_nocs_pair(const Mesh& sim, const NocsMesh& nocs);

// Unique undirected edges of the face set, ordered by (lo, hi) vertex pair.
std::vector<std::pair<std::int32_t, std::int32_t>> unique_edges(const Mesh& mesh);

// Lengths of the unique edges, in unique_edges() order.
std::vector<double> edge_lengths(const Mesh& mesh);

// (max - mean) / population std of the edge lengths. Returns 0 when the
// spread is numerically zero (std below 1e-12).
double divergence_score(const Mesh& mesh);

// True when the simulated mesh's divergence score exceeds ratio_threshold
// times the canonical mesh's score. A canonical score below 1e-12 cannot
// certify anything and counts as divergent.
bool is_divergent(const Mesh& sim, const NocsMesh& nocs, double ratio_threshold = 3.5);

// Index of the vertex closest to query; ties break to the lowest index.
std::size_t nearest_vertex(std::span<const Vec3> vertices, const Vec3& query);

}  // namespace bifold
