#include "bifold/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bifold::synth {

namespace {

// All sequences share one cloth: a 9x9 grid, 1 m on a side, lying in the
// z = 0 plane and centered on the origin. Canonical coordinates run with
// the grid, so world x is left-right and world y is bottom-top.
constexpr int kN = 9;
constexpr double kSpacing = 0.125;

std::int32_t vid(int i, int j) { return static_cast<std::int32_t>(j * kN + i); }

Vec3 rest_position(int i, int j) {
    return {i * kSpacing - 0.5, j * kSpacing - 0.5, 0.0};
}

SequenceRecord base_record(std::string id, GarmentCategory garment) {
    SequenceRecord rec;
    rec.sequence_id = std::move(id);
    rec.garment_category = garment;
    for (int j = 0; j < kN; ++j)
        for (int i = 0; i < kN; ++i)
            rec.nocs_vertices.push_back({i / 8.0, j / 8.0, 0.5});
    for (int j = 0; j + 1 < kN; ++j) {
        for (int i = 0; i + 1 < kN; ++i) {
            rec.faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            rec.faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    }
    return rec;
}

std::vector<Vec3> rest_positions() {
    std::vector<Vec3> v;
    v.reserve(kN * kN);
    for (int j = 0; j < kN; ++j)
        for (int i = 0; i < kN; ++i) v.push_back(rest_position(i, j));
    return v;
}

// Grasps hold from frame 2 to frame 22; the motion ramps linearly across
// that window. Frames before and after are static padding.
constexpr std::int64_t kFrames = 25;
constexpr std::int64_t kGripStart = 2;
constexpr std::int64_t kGripEnd = 22;

double ramp(std::int64_t t) {
    const double a = static_cast<double>(t - kGripStart) /
                     static_cast<double>(kGripEnd - kGripStart);
    return std::clamp(a, 0.0, 1.0);
}

// Folds the half of the cloth on the `sign` side of the x = 0 line over to
// the other side, hinging on the line. Pure rotation of that half: every
// edge length is preserved at every phase of the motion.
Vec3 fold_about_x0(const Vec3& p, double alpha, double sign) {
    if (p.x * sign <= 0.0) return p;
    return {p.x * std::cos(alpha), p.y, sign * p.x * std::sin(alpha)};
}

Vec3 fold_about_y0(const Vec3& p, double alpha, double sign) {
    if (p.y * sign <= 0.0) return p;
    return {p.x, p.y * std::cos(alpha), sign * p.y * std::sin(alpha)};
}

template <typename MoveFn>
SequenceRecord animate(SequenceRecord rec, std::int64_t frames, MoveFn&& move,
                       const std::vector<std::int32_t>& left_grips,
                       const std::vector<std::int32_t>& right_grips) {
    const std::vector<Vec3> rest = rest_positions();
    for (std::int64_t t = 0; t < frames; ++t) {
        FrameRecord fr;
        fr.t = t;
        fr.cloth_vertices.reserve(rest.size());
        for (std::size_t v = 0; v < rest.size(); ++v)
            fr.cloth_vertices.push_back(move(rest[v], t, static_cast<int>(v)));
        if (t >= kGripStart && t <= kGripEnd) {
            fr.left_grip_vertex_ids = left_grips;
            fr.right_grip_vertex_ids = right_grips;
        }
        rec.frames.push_back(std::move(fr));
    }
    return rec;
}

SequenceRecord bimanual_fold() {
    // Both hands on the left edge; the left half folds over to the right.
    auto move = [](const Vec3& p, std::int64_t t, int) {
        return fold_about_x0(p, ramp(t) * std::numbers::pi, -1.0);
    };
    SequenceRecord rec = animate(base_record("trousersA_fold0", GarmentCategory::Trousers),
                                 30, move, {vid(0, 8), vid(0, 7)}, {vid(0, 0), vid(0, 1)});
    // A short, motionless re-grasp near the end; the spurious-action filter
    // has to discard it.
    for (std::int64_t t = 25; t <= 27; ++t)
        rec.frames[static_cast<std::size_t>(t)].left_grip_vertex_ids = {vid(4, 4)};
    return rec;
}

SequenceRecord sleeve_fold() {
    // Both hands on the top-left corner of a shirt: a sleeve grasp. The
    // whole cloth shifts rigidly toward the center.
    auto move = [](const Vec3& p, std::int64_t t, int) {
        const double a = ramp(t);
        return Vec3{p.x + 0.3 * a, p.y - 0.3 * a, p.z};
    };
    return animate(base_record("tshirtA_sleeve0", GarmentCategory::Tshirt), kFrames, move,
                   {vid(0, 8), vid(0, 7)}, {vid(1, 8)});
}

SequenceRecord refinement() {
    // Hands on both top corners; a small sideways shift. Pick and place
    // resolve to the same location, so this is a refinement.
    auto move = [](const Vec3& p, std::int64_t t, int) {
        return Vec3{p.x + 0.15 * ramp(t), p.y, p.z};
    };
    return animate(base_record("skirtA_refine0", GarmentCategory::Skirt), kFrames, move,
                   {vid(0, 8), vid(0, 7)}, {vid(8, 8), vid(8, 7)});
}

SequenceRecord single_arm_fold() {
    // Left hand only: folds the top half down onto the bottom half.
    auto move = [](const Vec3& p, std::int64_t t, int) {
        return fold_about_y0(p, ramp(t) * std::numbers::pi, 1.0);
    };
    return animate(base_record("topA_fold0", GarmentCategory::Top), kFrames, move,
                   {vid(2, 8), vid(3, 8)}, {});
}

SequenceRecord diverging() {
    // One corner vertex shoots far off the cloth halfway through: its edge
    // lengths dwarf the rest and the divergence gate must reject the
    // sequence.
    auto move = [](const Vec3& p, std::int64_t t, int v) {
        Vec3 out{p.x + 0.2 * ramp(t), p.y, p.z};
        if (v == vid(8, 0) && t >= 12) out.z = 5.0;
        return out;
    };
    return animate(base_record("skirtB_diverge0", GarmentCategory::Skirt), kFrames, move,
                   {vid(0, 8)}, {});
}

SequenceRecord right_arm_fold() {
    // Right hand only: folds the right half over onto the left half.
    auto move = [](const Vec3& p, std::int64_t t, int) {
        return fold_about_x0(p, ramp(t) * std::numbers::pi, 1.0);
    };
    return animate(base_record("trousersB_fold1", GarmentCategory::Trousers), kFrames, move,
                   {}, {vid(8, 3), vid(8, 4)});
}

}  // namespace

std::vector<SequenceRecord> demo_corpus() {
    return {bimanual_fold(), sleeve_fold(), refinement(),
            single_arm_fold(), diverging(), right_arm_fold()};
}

}  // namespace bifold::synth
