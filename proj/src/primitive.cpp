#include "bifold/primitive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bifold/errors.hpp"

namespace bifold {

std::string_view to_string(GripperState g) {
    return g == GripperState::Open ? "open" : "closed";
}

namespace {

// Steps needed to cover dist at speed. The small slack keeps exact multiples
// (0.10 m at 5 mm) from rounding up to an extra step.
std::int64_t steps_for(double dist, double speed) {
    if (dist <= 0.0) return 0;
    return static_cast<std::int64_t>(std::ceil(dist / speed - 1e-9));
}

struct Builder {
    WaypointSchedule schedule;
    std::int64_t t = 0;
    Vec3 position;
    GripperState gripper = GripperState::Open;

    void emit(int phase) {
        schedule.waypoints.push_back({t++, position, gripper, phase});
    }

    // Straight-line motion at the given speed; grip_at_end switches the
    // gripper on the phase's final waypoint. min_steps forces a waypoint for
    // zero-length phases that carry a gripper event.
    void phase(int label, const Vec3& target, double speed,
               std::optional<GripperState> grip_at_end, std::int64_t min_steps = 0) {
        const Vec3 from = position;
        const double dist = distance(from, target);
        const std::int64_t n = std::max(steps_for(dist, speed), min_steps);
        for (std::int64_t k = 1; k <= n; ++k) {
            position = k == n ? target
                              : from + (target - from) *
                                           (static_cast<double>(k) / static_cast<double>(n));
            if (k == n && grip_at_end) gripper = *grip_at_end;
            emit(label);
        }
    }
};

}  // namespace

WaypointSchedule plan_pick_place(const Vec3& pick, const Vec3& place,
                                 const PrimitiveParams& params) {
    if (!(params.contact_speed > 0.0))
        throw ValidationError("contact_speed must be positive");
    if (!(params.transit_multiplier > 0.0))
        throw ValidationError("transit_multiplier must be positive");
    if (params.picker_radius < 0.0)
        throw ValidationError("picker_radius must be non-negative");
    const double grasp_z = params.surface_z + params.picker_radius;
    if (!(params.approach_height > grasp_z))
        throw ValidationError("approach_height must clear the grasp height");

    const double transit_speed = params.contact_speed * params.transit_multiplier;
    // Phase 1: grasp heights come from the picker radius, not the recorded
    // vertex height.
    const Vec3 pick_low{pick.x, pick.y, grasp_z};
    const Vec3 place_low{place.x, place.y, grasp_z};
    const Vec3 pick_high{pick.x, pick.y, params.approach_height};
    const Vec3 place_high{place.x, place.y, params.approach_height};

    Builder b;
    b.position = params.start.value_or(pick_high);
    b.emit(1);

    b.phase(2, pick_high, transit_speed, std::nullopt);
    b.phase(3, pick_low, params.contact_speed, GripperState::Closed, 1);
    b.phase(4, pick_high, params.contact_speed, std::nullopt);
    b.phase(5, place_high, params.contact_speed, std::nullopt);
    b.phase(6, place_low, params.contact_speed, GripperState::Open, 1);
    b.phase(7, place_high, transit_speed, std::nullopt);
    return std::move(b.schedule);
}

namespace {

void validate_schedule(const WaypointSchedule& s, const char* name) {
    if (s.waypoints.empty())
        throw ValidationError(std::string(name) + " schedule is empty");
    int phase = 0;
    std::int64_t t = -1;
    for (const Waypoint& w : s.waypoints) {
        if (w.phase < 1 || w.phase > 7 || w.phase < phase)
            throw ValidationError(std::string(name) + " schedule has bad phase order");
        if (w.t != t + 1)
            throw ValidationError(std::string(name) + " schedule timesteps not contiguous");
        phase = w.phase;
        t = w.t;
    }
}

}  // namespace

BimanualSchedule plan_bimanual(const WaypointSchedule& left,
                               const WaypointSchedule& right) {
    validate_schedule(left, "left");
    validate_schedule(right, "right");

    BimanualSchedule out;
    std::int64_t t = 0;
    std::size_t i = 0, j = 0;
    Waypoint last_l = left.waypoints.front();
    Waypoint last_r = right.waypoints.front();

    for (int phase = 1; phase <= 7; ++phase) {
        // Both arms spend the same number of steps in each phase; the one
        // that finishes early holds its phase-end pose.
        std::size_t ni = 0, nj = 0;
        while (i + ni < left.waypoints.size() && left.waypoints[i + ni].phase == phase)
            ++ni;
        while (j + nj < right.waypoints.size() && right.waypoints[j + nj].phase == phase)
            ++nj;
        const std::size_t n = std::max(ni, nj);
        for (std::size_t k = 0; k < n; ++k) {
            if (k < ni) last_l = left.waypoints[i + k];
            if (k < nj) last_r = right.waypoints[j + k];
            out.left.waypoints.push_back({t, last_l.position, last_l.gripper, phase});
            out.right.waypoints.push_back({t, last_r.position, last_r.gripper, phase});
            ++t;
        }
        i += ni;
        j += nj;
    }
    return out;
}

}  // namespace bifold
