#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bifold/annotation.hpp"
#include "bifold/image.hpp"

namespace bifold {

struct GarmentCounts {
    std::int64_t demos = 0;
    std::int64_t meshes = 0;  // distinct mesh keys (sequence_id prefix)
    std::int64_t actions = 0;
    std::int64_t unique_instructions = 0;
};

struct StatsReport {
    std::map<std::string, GarmentCounts> per_garment;
    std::int64_t total_sequences = 0;
    std::int64_t total_actions = 0;
    std::int64_t unique_instructions = 0;
    std::map<std::int64_t, std::int64_t> actions_per_sequence;  // count -> sequences
    std::map<std::pair<std::string, std::string>, std::int64_t> fold_directions;
    std::int64_t refinement_actions = 0;
    std::map<std::string, std::int64_t> sleeve_first;  // which sleeve is folded first
    // Place-pixel distance to the garment mask, 1-pixel bins; filled only
    // when masks are supplied.
    std::vector<std::int64_t> mask_distance_histogram;
};

// Aggregates annotation records. masks maps sequence_id to the garment's
// segmentation mask and may be empty.
StatsReport dataset_stats(std::span<const AnnotationRecord> records,
                          const std::map<std::string, PixelMask>& masks = {});

}  // namespace bifold
