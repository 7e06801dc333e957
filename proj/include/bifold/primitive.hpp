#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bifold/geometry.hpp"

namespace bifold {

enum class GripperState { Open, Closed };

std::string_view to_string(GripperState g);

struct Waypoint {
    std::int64_t t = 0;
    Vec3 position;
    GripperState gripper = GripperState::Open;
    int phase = 1;  // 1..7
};

struct WaypointSchedule {
    std::vector<Waypoint> waypoints;
};

struct PrimitiveParams {
    double picker_radius = 0.01;
    double approach_height = 0.15;
    double contact_speed = 0.005;       // meters per step in contact phases
    double transit_multiplier = 100.0;  // speed factor for phases 2 and 7
    double surface_z = 0.0;
    std::optional<Vec3> start;  // defaults to hovering over the pick
};

// Seven-phase pick-and-place:
//   1 set grasp heights to picker_radius above the surface
//   2 transit to above the pick            (fast)
//   3 descend and close the gripper        (contact speed)
//   4 lift back to approach height         (contact speed)
//   5 carry to above the place             (contact speed)
//   6 descend and open the gripper         (contact speed)
//   7 retreat to approach height           (fast)
// The gripper closes exactly once (end of phase 3) and opens exactly once
// (end of phase 6).
WaypointSchedule plan_pick_place(const Vec3& pick, const Vec3& place,
                                 const PrimitiveParams& params = {});

struct BimanualSchedule {
    WaypointSchedule left;
    WaypointSchedule right;
};

// Runs two schedules in lockstep: each phase lasts as long as the slower
// arm's phase, and the faster arm holds its phase-end position.
BimanualSchedule plan_bimanual(const WaypointSchedule& left,
                               const WaypointSchedule& right);

}  // namespace bifold
