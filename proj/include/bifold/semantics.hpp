#pragma once

#include <optional>
#include <span>
#include <string>

#include "bifold/actions.hpp"
#include "bifold/geometry.hpp"
#include "bifold/records.hpp"

namespace bifold {

enum class Vertical { Top, Bottom };
enum class Horizontal { Left, Right };

// Which canonical-space axes carry the top/bottom and left/right splits, and
// where each split sits. The high side of the up-down axis is "top", the
// high side of the left-right axis is "right"; values on a split go to the
// high side. The third axis (front/rear) is never thresholded.
struct AxisConfig {
    int updown_axis = 1;
    int leftright_axis = 0;
    double updown_split = 0.5;
    double leftright_split = 0.5;
};

// Per-hand region: both axes are set by thresholding; an unset axis means
// the two hands disagreed there.
struct RegionLabel {
    std::optional<Vertical> vertical;
    std::optional<Horizontal> horizontal;
    bool operator==(const RegionLabel&) const = default;
};

// A resolved location such as "top", "left" or "bottom right". The sleeve
// flag marks shirt-sleeve picks and never appears on other garments.
struct SemanticLabel {
    std::optional<Vertical> vertical;
    std::optional<Horizontal> horizontal;
    bool sleeve = false;

    std::string text() const;
    bool same_location(const SemanticLabel& o) const {
        return vertical == o.vertical && horizontal == o.horizontal;
    }
    bool operator==(const SemanticLabel&) const = default;
};

enum class ActionType { Pick, Place };

// Flips every axis that is set; the sleeve flag is dropped.
SemanticLabel opposite(const SemanticLabel& label);

// Thresholds a canonical coordinate (components in [0, 1]) into a region.
RegionLabel nocs_region(const Vec3& coord, const AxisConfig& axes = {});

// Region of the mean canonical coordinate of the grasped pick set.
RegionLabel hand_pick_region(const HandAction& action,
                             std::span<const Vec3> nocs_vertices,
                             const AxisConfig& axes = {});

// Region of the canonical coordinate of the mesh vertex nearest to the
// hand's final position. The lookup runs against the pre-action mesh
// configuration so a layer folded onto the target cannot shadow it.
RegionLabel hand_place_region(const HandAction& action,
                              std::span<const Vec3> mesh_vertices,
                              std::span<const Vec3> nocs_vertices,
                              const AxisConfig& axes = {});

// Fuses the two hands' regions into one semantic location. Place actions
// require the already-resolved pick location and prefer labels that do not
// repeat it; pick actions on a shirt top return the horizontal side with the
// sleeve flag set. Throws UnresolvableLocationError when a pick agrees on
// neither axis.
SemanticLabel resolve_location(const RegionLabel& left, const RegionLabel& right,
                               ActionType type, GarmentCategory garment,
                               const std::optional<SemanticLabel>& pick_location = {});

}  // namespace bifold
