#include "bifold/actions.hpp"

#include <algorithm>
#include <string>

#include "bifold/errors.hpp"

namespace bifold {

std::string_view to_string(Hand h) { return h == Hand::Left ? "left" : "right"; }

std::string_view to_string(ArmUsage u) {
    switch (u) {
        case ArmUsage::LeftOnly: return "left_only";
        case ArmUsage::RightOnly: return "right_only";
        case ArmUsage::Bimanual: return "bimanual";
    }
    return "bimanual";
}

std::optional<ArmUsage> arm_usage_from_string(std::string_view s) {
    if (s == "left_only") return ArmUsage::LeftOnly;
    if (s == "right_only") return ArmUsage::RightOnly;
    if (s == "bimanual") return ArmUsage::Bimanual;
    return std::nullopt;
}

std::int64_t ActionSegment::start_frame() const {
    if (left && right) return std::min(left->start_frame, right->start_frame);
    return left ? left->start_frame : right->start_frame;
}

std::int64_t ActionSegment::end_frame() const {
    if (left && right) return std::max(left->end_frame, right->end_frame);
    return left ? left->end_frame : right->end_frame;
}

namespace {

Vec3 centroid(const std::vector<std::int32_t>& ids, const std::vector<Vec3>& verts) {
    Vec3 sum;
    for (std::int32_t id : ids) sum = sum + verts[static_cast<std::size_t>(id)];
    return sum / static_cast<double>(ids.size());
}

}  // namespace

std::vector<HandAction> extract_hand_actions(const SequenceRecord& rec, Hand hand) {
    validate_sequence(rec);
    std::vector<HandAction> actions;
    const auto grips_of = [&](std::size_t f) -> const std::vector<std::int32_t>& {
        return hand == Hand::Left ? rec.frames[f].left_grip_vertex_ids
                                  : rec.frames[f].right_grip_vertex_ids;
    };

    std::size_t f = 0;
    while (f < rec.frames.size()) {
        if (grips_of(f).empty()) {
            ++f;
            continue;
        }
        const std::size_t first = f;
        while (f + 1 < rec.frames.size() && !grips_of(f + 1).empty()) ++f;
        const std::size_t last = f;

        HandAction a;
        a.hand = hand;
        a.start_frame = rec.frames[first].t;
        a.end_frame = rec.frames[last].t;
        a.pick_vertex_ids = grips_of(first);
        a.place_vertex_ids = grips_of(last);
        std::sort(a.pick_vertex_ids.begin(), a.pick_vertex_ids.end());
        std::sort(a.place_vertex_ids.begin(), a.place_vertex_ids.end());
        a.pick_point = centroid(a.pick_vertex_ids, rec.frames[first].cloth_vertices);
        a.place_point = centroid(a.place_vertex_ids, rec.frames[last].cloth_vertices);
        actions.push_back(std::move(a));
        ++f;
    }
    return actions;
}

std::vector<HandAction> filter_spurious(const std::vector<HandAction>& actions,
                                        std::int64_t max_frames, double min_travel) {
    std::vector<HandAction> kept;
    for (const HandAction& a : actions) {
        if (a.span() <= max_frames) continue;
        if (a.travel() < min_travel) continue;
        kept.push_back(a);
    }
    return kept;
}

namespace {

void check_hand_list(const std::vector<HandAction>& actions, const char* name) {
    for (std::size_t i = 0; i + 1 < actions.size(); ++i) {
        if (actions[i + 1].start_frame <= actions[i].end_frame)
            throw ValidationError(std::string(name) +
                                  " actions overlap or are out of order at index " +
                                  std::to_string(i));
    }
}

}  // namespace

std::vector<ActionSegment> align_bimanual(const std::vector<HandAction>& left,
                                          const std::vector<HandAction>& right) {
    check_hand_list(left, "left");
    check_hand_list(right, "right");

    std::vector<ActionSegment> segments;
    std::size_t i = 0, j = 0;
    while (i < left.size() && j < right.size()) {
        const HandAction& l = left[i];
        const HandAction& r = right[j];
        if (l.overlaps(r)) {
            segments.push_back({ArmUsage::Bimanual, l, r});
            ++i;
            ++j;
        } else if (l.end_frame < r.start_frame) {
            segments.push_back({ArmUsage::LeftOnly, l, std::nullopt});
            ++i;
        } else {
            segments.push_back({ArmUsage::RightOnly, std::nullopt, r});
            ++j;
        }
    }
    for (; i < left.size(); ++i)
        segments.push_back({ArmUsage::LeftOnly, left[i], std::nullopt});
    for (; j < right.size(); ++j)
        segments.push_back({ArmUsage::RightOnly, std::nullopt, right[j]});

    std::stable_sort(segments.begin(), segments.end(),
                     [](const ActionSegment& a, const ActionSegment& b) {
                         return a.start_frame() < b.start_frame();
                     });
    return segments;
}

}  // namespace bifold
