#include "bifold/records.hpp"

#include <string>

#include "bifold/errors.hpp"

namespace bifold {

std::string_view to_string(GarmentCategory g) {
    switch (g) {
        case GarmentCategory::Skirt: return "Skirt";
        case GarmentCategory::Top: return "Top";
        case GarmentCategory::Trousers: return "Trousers";
        case GarmentCategory::Tshirt: return "Tshirt";
    }
    return "Skirt";
}

std::optional<GarmentCategory> garment_from_string(std::string_view s) {
    if (s == "Skirt") return GarmentCategory::Skirt;
    if (s == "Top") return GarmentCategory::Top;
    if (s == "Trousers") return GarmentCategory::Trousers;
    if (s == "Tshirt") return GarmentCategory::Tshirt;
    return std::nullopt;
}

void validate_sequence(const SequenceRecord& rec) {
    if (rec.sequence_id.empty()) throw ValidationError("sequence_id is empty");
    if (rec.frames.empty()) throw ValidationError("sequence has no frames");

    const std::size_t n = rec.nocs_vertices.size();
    validate_nocs_pair(Mesh{rec.nocs_vertices, rec.faces}, NocsMesh{rec.nocs_vertices});

    std::int64_t prev_t = 0;
    for (std::size_t f = 0; f < rec.frames.size(); ++f) {
        const FrameRecord& frame = rec.frames[f];
        if (f > 0 && frame.t <= prev_t)
            throw ValidationError("frames not increasing: frames[" + std::to_string(f) +
                                  "].t = " + std::to_string(frame.t));
        prev_t = frame.t;
        if (frame.cloth_vertices.size() != n)
            throw ValidationError("vertex count mismatch at frames[" + std::to_string(f) +
                                  "]: " + std::to_string(frame.cloth_vertices.size()) +
                                  " vs " + std::to_string(n));
        for (const auto* grips :
             {&frame.left_grip_vertex_ids, &frame.right_grip_vertex_ids}) {
            for (std::int32_t id : *grips) {
                if (id < 0 || static_cast<std::size_t>(id) >= n)
                    throw ValidationError("grip index out of range at frames[" +
                                          std::to_string(f) +
                                          "]: " + std::to_string(id));
            }
        }
    }
}

}  // namespace bifold
