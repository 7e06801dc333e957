#pragma once

// Shared fixture builders: regular grids with the canonical two-triangle
// cell split, and small demonstration records assembled frame by frame.

#include <cstdint>
#include <string>
#include <vector>

#include "bifold/geometry.hpp"
#include "bifold/records.hpp"

namespace fixtures {

inline std::int32_t grid_vid(int n, int i, int j) { return j * n + i; }

// n x n vertex grid in the z=0 plane with cells split into two triangles.
inline bifold::Mesh grid_mesh(int n, double spacing) {
    bifold::Mesh mesh;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            mesh.vertices.push_back({i * spacing, j * spacing, 0.0});
    for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
            mesh.faces.push_back(
                {grid_vid(n, i, j), grid_vid(n, i + 1, j), grid_vid(n, i + 1, j + 1)});
            mesh.faces.push_back(
                {grid_vid(n, i, j), grid_vid(n, i + 1, j + 1), grid_vid(n, i, j + 1)});
        }
    }
    return mesh;
}

// Canonical coordinates matching grid_mesh: x and y spread over [0, 1],
// z fixed mid-range.
inline bifold::NocsMesh grid_nocs(int n) {
    bifold::NocsMesh nocs;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            nocs.vertices.push_back({static_cast<double>(i) / (n - 1),
                                     static_cast<double>(j) / (n - 1), 0.5});
    return nocs;
}

// Static-cloth record: every frame repeats the grid rest pose; grips are
// provided per frame as (left ids, right ids) pairs.
inline bifold::SequenceRecord static_record(
    int n, const std::vector<std::int64_t>& times,
    const std::vector<std::vector<std::int32_t>>& left_grips,
    const std::vector<std::vector<std::int32_t>>& right_grips,
    const std::string& id = "fixture_seq0") {
    const bifold::Mesh mesh = grid_mesh(n, 0.1);
    bifold::SequenceRecord rec;
    rec.sequence_id = id;
    rec.garment_category = bifold::GarmentCategory::Trousers;
    rec.faces = mesh.faces;
    rec.nocs_vertices = grid_nocs(n).vertices;
    for (std::size_t f = 0; f < times.size(); ++f) {
        bifold::FrameRecord frame;
        frame.t = times[f];
        frame.cloth_vertices = mesh.vertices;
        if (f < left_grips.size()) frame.left_grip_vertex_ids = left_grips[f];
        if (f < right_grips.size()) frame.right_grip_vertex_ids = right_grips[f];
        rec.frames.push_back(std::move(frame));
    }
    return rec;
}

}  // namespace fixtures
