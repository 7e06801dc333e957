#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bifold/annotation.hpp"
#include "bifold/camera.hpp"
#include "bifold/heatmap.hpp"
#include "bifold/records.hpp"
#include "bifold/semantics.hpp"
#include "bifold/templates.hpp"

namespace bifold {

struct PipelineConfig {
    std::uint64_t seed = 0;
    std::int64_t spurious_max_frames = 5;
    double spurious_min_travel = 0.1;
    double divergence_ratio = 3.5;
    double sigma2 = 5.0;
    double iou_success = 0.8;
    double vertex_success = 0.0125;
    CameraVolume camera;
    AxisConfig axes;
    std::string template_bank_path;  // empty = built-in bank
    bool capitalized_garments = false;
    double approach_height = 0.15;
    double picker_radius = 0.01;
    double contact_speed = 0.005;
    double transit_multiplier = 100.0;
    bool kp_squared = false;
    bool quantile_weak = false;
};

// Parses and validates a config file; missing keys keep their defaults.
PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::filesystem::path& path);
void validate_config(const PipelineConfig& cfg);

// Resolution order: explicit path argument, then the BIFOLD_TEMPLATE_BANK
// environment variable, then the config path, then the built-in bank.
TemplateBank resolve_template_bank(const PipelineConfig& cfg,
                                   const std::string& override_path = {});

struct HeatmapOutput {
    std::string name;  // file stem, e.g. "<id>.a0.left.pick.heatmap"
    Heatmap map;
};

struct AnnotatedSequence {
    AnnotationRecord record;
    std::vector<HeatmapOutput> heatmaps;
    std::int64_t actions_dropped = 0;  // unresolvable pick locations
};

struct DropReason {
    std::string reason;  // "divergent", "no_actions", "no_valid_camera"
};

using AnnotateResult = std::variant<AnnotatedSequence, DropReason>;

// Runs the full per-sequence pipeline: divergence gate, action extraction
// and filtering, bimanual alignment, location resolution, instruction
// generation, camera sampling, pixel projection, target heatmaps.
AnnotateResult annotate_sequence(const SequenceRecord& rec, const PipelineConfig& cfg,
                                 const TemplateBank& bank);

struct RunSummary {
    std::int64_t kept = 0;
    std::int64_t dropped = 0;
    std::int64_t failed = 0;
};

// Processes every *.json sequence under input_dir (manifest.json excluded)
// and writes annotations, heatmaps and a manifest to output_dir. jobs sizes
// the worker pool; results do not depend on it.
RunSummary run_annotate(const std::filesystem::path& input_dir,
                        const std::filesystem::path& output_dir,
                        const PipelineConfig& cfg, int jobs = 1);

// Divergence gate only; writes just the manifest.
RunSummary run_filter(const std::filesystem::path& input_dir,
                      const std::filesystem::path& output_dir,
                      const PipelineConfig& cfg, int jobs = 1);

}  // namespace bifold
