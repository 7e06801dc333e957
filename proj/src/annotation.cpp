#include "bifold/annotation.hpp"

#include <algorithm>
#include <string>

#include "bifold/errors.hpp"

namespace bifold {

std::int64_t ActionAnnotation::start_frame() const {
    if (left && right) return std::min(left->start_frame, right->start_frame);
    if (left) return left->start_frame;
    if (right) return right->start_frame;
    return 0;
}

std::int64_t ActionAnnotation::end_frame() const {
    if (left && right) return std::max(left->end_frame, right->end_frame);
    if (left) return left->end_frame;
    if (right) return right->end_frame;
    return 0;
}

namespace {

void validate_hand(const HandAnnotation& h, const std::string& where) {
    if (h.end_frame < h.start_frame)
        throw ValidationError(where + ": end_frame before start_frame");
    if (h.pick_vertex_ids.empty() || h.place_vertex_ids.empty())
        throw ValidationError(where + ": empty grasp vertex set");
    if (h.pick_pixels.size() != h.pick_vertex_ids.size() ||
        h.place_pixels.size() != h.place_vertex_ids.size())
        throw ValidationError(where + ": pixel/vertex count mismatch");
}

}  // namespace

void validate_annotation(const AnnotationRecord& rec) {
    if (rec.sequence_id.empty()) throw ValidationError("sequence_id is empty");
    if (rec.camera.height <= 0 || rec.camera.width <= 0)
        throw ValidationError("camera image size must be positive");

    std::int64_t prev_left_end = -1, prev_right_end = -1;
    std::int64_t prev_start = -1;
    for (std::size_t k = 0; k < rec.actions.size(); ++k) {
        const ActionAnnotation& a = rec.actions[k];
        const std::string where = "actions[" + std::to_string(k) + "]";

        const bool needs_left = a.arm_usage != ArmUsage::RightOnly;
        const bool needs_right = a.arm_usage != ArmUsage::LeftOnly;
        if (needs_left != a.left.has_value() || needs_right != a.right.has_value())
            throw ValidationError(where + ": hands do not match arm_usage");
        if (a.left) validate_hand(*a.left, where + ".left");
        if (a.right) validate_hand(*a.right, where + ".right");

        if (a.start_frame() < prev_start)
            throw ValidationError(where + ": actions not ordered by start frame");
        prev_start = a.start_frame();
        if (a.left) {
            if (a.left->start_frame <= prev_left_end)
                throw ValidationError(where + ": left hand actions overlap");
            prev_left_end = a.left->end_frame;
        }
        if (a.right) {
            if (a.right->start_frame <= prev_right_end)
                throw ValidationError(where + ": right hand actions overlap");
            prev_right_end = a.right->end_frame;
        }

        if (a.pick_label.sleeve && rec.garment_category != GarmentCategory::Tshirt)
            throw ValidationError(where + ": sleeve flag on a non-shirt garment");
        if (a.instruction.empty()) throw ValidationError(where + ": empty instruction");
    }
}

}  // namespace bifold
