#include "bifold/semantics.hpp"

#include <algorithm>
#include <string>

#include "bifold/errors.hpp"

namespace bifold {

std::string SemanticLabel::text() const {
    std::string out;
    if (vertical) out = *vertical == Vertical::Top ? "top" : "bottom";
    if (horizontal) {
        if (!out.empty()) out += ' ';
        out += *horizontal == Horizontal::Left ? "left" : "right";
    }
    return out;
}

SemanticLabel opposite(const SemanticLabel& label) {
    SemanticLabel out;
    if (label.vertical)
        out.vertical = *label.vertical == Vertical::Top ? Vertical::Bottom : Vertical::Top;
    if (label.horizontal)
        out.horizontal =
            *label.horizontal == Horizontal::Left ? Horizontal::Right : Horizontal::Left;
    return out;
}

namespace {

double component(const Vec3& v, int axis) {
    switch (axis) {
        case 0: return v.x;
        case 1: return v.y;
        case 2: return v.z;
        default: throw ValidationError("axis index must be 0, 1 or 2");
    }
}

}  // namespace

RegionLabel nocs_region(const Vec3& coord, const AxisConfig& axes) {
    for (double c : {coord.x, coord.y, coord.z}) {
        if (!(c >= 0.0 && c <= 1.0))
            throw ValidationError("nocs coordinate out of range in nocs_region");
    }
    RegionLabel out;
    out.vertical = component(coord, axes.updown_axis) >= axes.updown_split
                       ? Vertical::Top
                       : Vertical::Bottom;
    out.horizontal = component(coord, axes.leftright_axis) >= axes.leftright_split
                         ? Horizontal::Right
                         : Horizontal::Left;
    return out;
}

RegionLabel hand_pick_region(const HandAction& action,
                             std::span<const Vec3> nocs_vertices,
                             const AxisConfig& axes) {
    if (action.pick_vertex_ids.empty())
        throw ValidationError("pick set is empty");
    Vec3 sum;
    for (std::int32_t id : action.pick_vertex_ids) {
        if (id < 0 || static_cast<std::size_t>(id) >= nocs_vertices.size())
            throw ValidationError("grip index out of range in hand_pick_region");
        sum = sum + nocs_vertices[static_cast<std::size_t>(id)];
    }
    Vec3 mean = sum / static_cast<double>(action.pick_vertex_ids.size());
    mean.x = std::clamp(mean.x, 0.0, 1.0);
    mean.y = std::clamp(mean.y, 0.0, 1.0);
    mean.z = std::clamp(mean.z, 0.0, 1.0);
    return nocs_region(mean, axes);
}

RegionLabel hand_place_region(const HandAction& action,
                              std::span<const Vec3> mesh_vertices,
                              std::span<const Vec3> nocs_vertices,
                              const AxisConfig& axes) {
    if (mesh_vertices.size() != nocs_vertices.size())
        throw ValidationError("mesh/nocs vertex count mismatch in hand_place_region");
    const std::size_t idx = nearest_vertex(mesh_vertices, action.place_point);
    return nocs_region(nocs_vertices[idx], axes);
}

SemanticLabel resolve_location(const RegionLabel& left, const RegionLabel& right,
                               ActionType type, GarmentCategory garment,
                               const std::optional<SemanticLabel>& pick_location) {
    // An axis survives only when both hands agree on it.
    std::optional<Vertical> v;
    if (left.vertical && right.vertical && *left.vertical == *right.vertical)
        v = *left.vertical;
    std::optional<Horizontal> h;
    if (left.horizontal && right.horizontal && *left.horizontal == *right.horizontal)
        h = *left.horizontal;

    const auto require_pick = [&]() -> const SemanticLabel& {
        if (!pick_location)
            throw ValidationError("place resolution requires the pick location");
        return *pick_location;
    };

    if (h) {
        const SemanticLabel hl{std::nullopt, h, false};
        if (v) {
            const SemanticLabel vl{v, std::nullopt, false};
            const SemanticLabel both{v, h, false};
            if (type == ActionType::Place) {
                // Prefer a label that does not collide with the pick side.
                const SemanticLabel& pick = require_pick();
                if (pick.same_location(hl)) return vl;
                if (pick.same_location(vl)) return hl;
                if (pick.same_location(opposite(hl))) return hl;
                if (pick.same_location(opposite(vl))) return vl;
                return both;
            }
            if (garment == GarmentCategory::Tshirt && *v == Vertical::Top)
                return SemanticLabel{std::nullopt, h, true};
            return both;
        }
        return hl;
    }
    if (v) return SemanticLabel{v, std::nullopt, false};

    if (type == ActionType::Place) {
        // The grasped vertices can be unreliable at release; fall back to
        // the side opposite the pick.
        return opposite(require_pick());
    }
    throw UnresolvableLocationError("hands agree on no axis for a pick action");
}

}  // namespace bifold
