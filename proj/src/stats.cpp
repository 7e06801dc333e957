#include "bifold/stats.hpp"

#include <algorithm>
#include <cmath>

#include "bifold/camera.hpp"

namespace bifold {

namespace {

// Sequences exported from the same garment share an id prefix before the
// first underscore; that prefix identifies the mesh.
std::string mesh_key(const std::string& sequence_id) {
    const std::size_t pos = sequence_id.find('_');
    return pos == std::string::npos ? sequence_id : sequence_id.substr(0, pos);
}

}  // namespace

StatsReport dataset_stats(std::span<const AnnotationRecord> records,
                          const std::map<std::string, PixelMask>& masks) {
    StatsReport report;
    std::map<std::string, std::set<std::string>> meshes_per_garment;
    std::map<std::string, std::set<std::string>> instructions_per_garment;
    std::set<std::string> all_instructions;

    for (const AnnotationRecord& rec : records) {
        const std::string garment(to_string(rec.garment_category));
        GarmentCounts& counts = report.per_garment[garment];
        counts.demos += 1;
        meshes_per_garment[garment].insert(mesh_key(rec.sequence_id));
        report.total_sequences += 1;

        const auto seq_actions = static_cast<std::int64_t>(rec.actions.size());
        counts.actions += seq_actions;
        report.total_actions += seq_actions;
        report.actions_per_sequence[seq_actions] += 1;

        bool sleeve_seen = false;
        for (const ActionAnnotation& a : rec.actions) {
            instructions_per_garment[garment].insert(a.instruction);
            all_instructions.insert(a.instruction);

            switch (a.kind) {
                case ActionKind::Fold:
                    report.fold_directions[{a.pick_label.text(), a.place_label.text()}] += 1;
                    break;
                case ActionKind::Refine:
                    report.refinement_actions += 1;
                    break;
                case ActionKind::Sleeve:
                    if (!sleeve_seen) {
                        sleeve_seen = true;
                        report.sleeve_first[a.pick_label.text()] += 1;
                    }
                    break;
            }

            if (masks.empty()) continue;
            auto it = masks.find(rec.sequence_id);
            if (it == masks.end()) continue;
            for (const HandAnnotation* hand : {a.left ? &*a.left : nullptr,
                                               a.right ? &*a.right : nullptr}) {
                if (!hand) continue;
                for (const Pixel& p : hand->place_pixels) {
                    const double d = mask_distance(p, it->second);
                    const auto bin = static_cast<std::size_t>(std::floor(d));
                    if (report.mask_distance_histogram.size() <= bin)
                        report.mask_distance_histogram.resize(bin + 1, 0);
                    report.mask_distance_histogram[bin] += 1;
                }
            }
        }
    }

    for (auto& [garment, counts] : report.per_garment) {
        counts.meshes = static_cast<std::int64_t>(meshes_per_garment[garment].size());
        counts.unique_instructions =
            static_cast<std::int64_t>(instructions_per_garment[garment].size());
    }
    report.unique_instructions = static_cast<std::int64_t>(all_instructions.size());
    return report;
}

}  // namespace bifold
