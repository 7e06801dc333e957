#include <doctest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bifold/stats.hpp"

using namespace bifold;

namespace {

SemanticLabel label_of(std::optional<Vertical> v, std::optional<Horizontal> h,
                       bool sleeve = false) {
    SemanticLabel l;
    l.vertical = v;
    l.horizontal = h;
    l.sleeve = sleeve;
    return l;
}

ActionAnnotation action(ActionKind kind, const SemanticLabel& pick,
                        const SemanticLabel& place, const std::string& instruction) {
    ActionAnnotation a;
    a.arm_usage = ArmUsage::LeftOnly;
    HandAnnotation left;
    left.start_frame = 0;
    left.end_frame = 10;
    left.pick_vertex_ids = {0};
    left.place_vertex_ids = {0};
    left.pick_pixels = {{1.0, 1.0}};
    left.place_pixels = {{1.0, 1.0}};
    a.left = left;
    a.pick_label = pick;
    a.place_label = place;
    a.kind = kind;
    a.instruction = instruction;
    return a;
}

AnnotationRecord record(const std::string& id, GarmentCategory garment,
                        std::vector<ActionAnnotation> actions) {
    AnnotationRecord rec;
    rec.sequence_id = id;
    rec.garment_category = garment;
    rec.camera.height = 8;
    rec.camera.width = 8;
    rec.actions = std::move(actions);
    return rec;
}

}  // namespace

TEST_SUITE_BEGIN("stats");

TEST_CASE("empty input produces an all-zero report") {
    const StatsReport report = dataset_stats(std::vector<AnnotationRecord>{});
    CHECK(report.per_garment.empty());
    CHECK(report.total_sequences == 0);
    CHECK(report.total_actions == 0);
    CHECK(report.unique_instructions == 0);
    CHECK(report.actions_per_sequence.empty());
    CHECK(report.fold_directions.empty());
    CHECK(report.refinement_actions == 0);
    CHECK(report.sleeve_first.empty());
    CHECK(report.mask_distance_histogram.empty());
}

TEST_CASE("dataset_stats aggregates per garment and per sequence") {
    const SemanticLabel left = label_of({}, Horizontal::Left);
    const SemanticLabel right = label_of({}, Horizontal::Right);
    const SemanticLabel top = label_of(Vertical::Top, {});

    std::vector<AnnotationRecord> records;
    // Two trousers demos off the same mesh, one and two actions each.
    records.push_back(record("meshA_fold0", GarmentCategory::Trousers,
                             {action(ActionKind::Fold, left, right, "fold A")}));
    records.push_back(record("meshA_fold1", GarmentCategory::Trousers,
                             {action(ActionKind::Fold, left, right, "fold A"),
                              action(ActionKind::Refine, top, top, "tidy top")}));
    // One skirt demo on another mesh with three actions.
    records.push_back(record("meshB_fold0", GarmentCategory::Skirt,
                             {action(ActionKind::Fold, top, right, "fold B"),
                              action(ActionKind::Fold, left, right, "fold A"),
                              action(ActionKind::Refine, top, top, "tidy top")}));

    const StatsReport report = dataset_stats(records);

    REQUIRE(report.per_garment.count("Trousers") == 1);
    REQUIRE(report.per_garment.count("Skirt") == 1);
    const GarmentCounts& trousers = report.per_garment.at("Trousers");
    CHECK(trousers.demos == 2);
    CHECK(trousers.meshes == 1);
    CHECK(trousers.actions == 3);
    CHECK(trousers.unique_instructions == 2);  // "fold A", "tidy top"
    const GarmentCounts& skirt = report.per_garment.at("Skirt");
    CHECK(skirt.demos == 1);
    CHECK(skirt.meshes == 1);
    CHECK(skirt.actions == 3);
    CHECK(skirt.unique_instructions == 3);

    CHECK(report.total_sequences == 3);
    CHECK(report.total_actions == 6);
    // Per-garment action counts add up to the total.
    CHECK(trousers.actions + skirt.actions == report.total_actions);
    // Instructions are deduplicated globally across garments.
    CHECK(report.unique_instructions == 3);

    const std::map<std::int64_t, std::int64_t> expected_hist = {{1, 1}, {2, 1}, {3, 1}};
    CHECK(report.actions_per_sequence == expected_hist);

    CHECK(report.fold_directions.at({"left", "right"}) == 3);
    CHECK(report.fold_directions.at({"top", "right"}) == 1);
    CHECK(report.refinement_actions == 2);
    CHECK(report.sleeve_first.empty());
}

TEST_CASE("dataset_stats is permutation invariant") {
    const SemanticLabel left = label_of({}, Horizontal::Left);
    const SemanticLabel right = label_of({}, Horizontal::Right);
    std::vector<AnnotationRecord> records = {
        record("a_0", GarmentCategory::Top,
               {action(ActionKind::Fold, left, right, "one")}),
        record("b_0", GarmentCategory::Tshirt,
               {action(ActionKind::Sleeve, label_of({}, Horizontal::Left, true), right,
                       "two")}),
        record("c_0", GarmentCategory::Skirt,
               {action(ActionKind::Refine, left, left, "three")}),
    };
    const StatsReport forward = dataset_stats(records);
    std::reverse(records.begin(), records.end());
    const StatsReport backward = dataset_stats(records);

    CHECK(forward.total_actions == backward.total_actions);
    CHECK(forward.unique_instructions == backward.unique_instructions);
    CHECK(forward.actions_per_sequence == backward.actions_per_sequence);
    CHECK(forward.fold_directions == backward.fold_directions);
    CHECK(forward.sleeve_first == backward.sleeve_first);
    CHECK(forward.per_garment.size() == backward.per_garment.size());
}

TEST_CASE("only the first sleeve action of a sequence counts") {
    const SemanticLabel left_sleeve = label_of({}, Horizontal::Left, true);
    const SemanticLabel right_sleeve = label_of({}, Horizontal::Right, true);
    const SemanticLabel center = label_of({}, Horizontal::Left);

    std::vector<AnnotationRecord> records;
    records.push_back(record("shirtA_0", GarmentCategory::Tshirt,
                             {action(ActionKind::Sleeve, right_sleeve, center, "r first"),
                              action(ActionKind::Sleeve, left_sleeve, center, "l second")}));
    records.push_back(record("shirtB_0", GarmentCategory::Tshirt,
                             {action(ActionKind::Sleeve, left_sleeve, center, "l first")}));

    const StatsReport report = dataset_stats(records);
    const std::map<std::string, std::int64_t> expected = {{"left", 1}, {"right", 1}};
    CHECK(report.sleeve_first == expected);
}

TEST_CASE("mask histogram bins place-pixel distances") {
    const SemanticLabel left = label_of({}, Horizontal::Left);
    const SemanticLabel right = label_of({}, Horizontal::Right);

    // The mask holds a single set pixel at (1, 1) of an 8x8 image.
    PixelMask mask;
    mask.height = 8;
    mask.width = 8;
    mask.values.assign(64, 0);
    mask.values[1 * 8 + 1] = 1;

    // Two actions: one placing on the mask pixel (distance 0), one placing
    // at (1, 4), three pixels away.
    ActionAnnotation on_mask = action(ActionKind::Fold, left, right, "near");
    on_mask.left->place_pixels = {{1.0, 1.0}};
    ActionAnnotation off_mask = action(ActionKind::Fold, left, right, "far");
    off_mask.left->place_pixels = {{1.0, 4.0}};

    std::vector<AnnotationRecord> records = {
        record("m_0", GarmentCategory::Skirt, {on_mask, off_mask})};
    std::map<std::string, PixelMask> masks;
    masks["m_0"] = mask;

    const StatsReport report = dataset_stats(records, masks);
    REQUIRE(report.mask_distance_histogram.size() == 4);
    CHECK(report.mask_distance_histogram[0] == 1);
    CHECK(report.mask_distance_histogram[1] == 0);
    CHECK(report.mask_distance_histogram[2] == 0);
    CHECK(report.mask_distance_histogram[3] == 1);

    // Records without a matching mask contribute nothing.
    std::map<std::string, PixelMask> unrelated;
    unrelated["other_0"] = mask;
    CHECK(dataset_stats(records, unrelated).mask_distance_histogram.empty());
}

TEST_SUITE_END();
