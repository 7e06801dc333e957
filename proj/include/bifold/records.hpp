#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bifold/geometry.hpp"

namespace bifold {

enum class GarmentCategory { Skirt, Top, Trousers, Tshirt };

std::string_view to_string(GarmentCategory g);
std::optional<GarmentCategory> garment_from_string(std::string_view s);

struct FrameRecord {
    std::int64_t t = 0;
    std::vector<Vec3> cloth_vertices;
    std::vector<std::int32_t> left_grip_vertex_ids;
    std::vector<std::int32_t> right_grip_vertex_ids;
};

// One recorded demonstration: a fixed topology, its canonical coordinates,
// and per-frame world-space vertex positions plus grasped vertex ids.
struct SequenceRecord {
    std::string sequence_id;
    GarmentCategory garment_category = GarmentCategory::Skirt;
    std::vector<Face> faces;
    std::vector<Vec3> nocs_vertices;
    std::vector<FrameRecord> frames;

    Mesh frame_mesh(std::size_t i) const {
        return Mesh{frames[i].cloth_vertices, faces};
    }
};

void validate_sequence(const SequenceRecord& rec);

}  // namespace bifold
