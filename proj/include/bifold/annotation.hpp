#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bifold/actions.hpp"
#include "bifold/camera.hpp"
#include "bifold/records.hpp"
#include "bifold/semantics.hpp"
#include "bifold/templates.hpp"

namespace bifold {

struct HandAnnotation {
    std::int64_t start_frame = 0;
    std::int64_t end_frame = 0;
    std::vector<std::int32_t> pick_vertex_ids;
    std::vector<std::int32_t> place_vertex_ids;
    Vec3 pick_point;
    Vec3 place_point;
    std::vector<Pixel> pick_pixels;   // one per pick vertex
    std::vector<Pixel> place_pixels;  // one per place vertex
};

struct ActionAnnotation {
    ArmUsage arm_usage = ArmUsage::Bimanual;
    std::optional<HandAnnotation> left;
    std::optional<HandAnnotation> right;
    SemanticLabel pick_label;
    SemanticLabel place_label;
    ActionKind kind = ActionKind::Fold;
    int template_index = 0;
    std::optional<Hand> single_arm;
    std::string instruction;

    std::int64_t start_frame() const;
    std::int64_t end_frame() const;
};

// Everything the pipeline derives for one kept sequence. One camera serves
// the whole sequence.
struct AnnotationRecord {
    std::string sequence_id;
    GarmentCategory garment_category = GarmentCategory::Skirt;
    CameraPose camera;
    std::vector<ActionAnnotation> actions;
};

void validate_annotation(const AnnotationRecord& rec);

}  // namespace bifold
