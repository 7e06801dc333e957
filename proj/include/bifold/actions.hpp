#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bifold/geometry.hpp"
#include "bifold/records.hpp"

namespace bifold {

enum class Hand { Left, Right };

std::string_view to_string(Hand h);

// One maximal contiguous grasp of a single hand. Frame numbers are the
// stored per-frame timestamps.
struct HandAction {
    Hand hand = Hand::Left;
    std::int64_t start_frame = 0;
    std::int64_t end_frame = 0;
    std::vector<std::int32_t> pick_vertex_ids;   // grip set at the first frame
    std::vector<std::int32_t> place_vertex_ids;  // grip set at the last frame
    Vec3 pick_point;   // centroid of the pick set at the first frame
    Vec3 place_point;  // centroid of the place set at the last frame

    std::int64_t span() const { return end_frame - start_frame + 1; }
    double travel() const { return distance(pick_point, place_point); }
    bool overlaps(const HandAction& o) const {
        return start_frame <= o.end_frame && o.start_frame <= end_frame;
    }
};

enum class ArmUsage { LeftOnly, RightOnly, Bimanual };

std::string_view to_string(ArmUsage u);
std::optional<ArmUsage> arm_usage_from_string(std::string_view s);

struct ActionSegment {
    ArmUsage arm_usage = ArmUsage::LeftOnly;
    std::optional<HandAction> left;
    std::optional<HandAction> right;

    std::int64_t start_frame() const;
    std::int64_t end_frame() const;
};

// Maximal runs of frames on which the given hand grasps at least one vertex.
std::vector<HandAction> extract_hand_actions(const SequenceRecord& rec, Hand hand);

// Drops actions spanning at most max_frames frames (inclusive count) or
// moving their grasp centroid less than min_travel.
std::vector<HandAction> filter_spurious(const std::vector<HandAction>& actions,
                                        std::int64_t max_frames = 5,
                                        double min_travel = 0.1);

// Pairs overlapping left/right actions into bimanual segments, greedily in
// start-frame order; each action is merged at most once. Inputs must each be
// sorted and non-overlapping within their own hand.
std::vector<ActionSegment> align_bimanual(const std::vector<HandAction>& left,
                                          const std::vector<HandAction>& right);

}  // namespace bifold
