#include "bifold/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <utility>

#include <json.hpp>

#include "bifold/actions.hpp"
#include "bifold/errors.hpp"
#include "bifold/geometry.hpp"
#include "bifold/io.hpp"
#include "bifold/rng.hpp"

namespace bifold {

namespace {

// --- config file ------------------------------------------------------------
//
// The config is one JSON object. Every pipeline constant has a key whose
// default is the standard value, so an empty object (or no config at all)
// runs the reference settings.

using nlohmann::json;

double cfg_double(const json& v, const std::string& key) {
    if (!v.is_number())
        throw ParseError("config key '" + key + "': expected a number");
    return v.get<double>();
}

std::int64_t cfg_int(const json& v, const std::string& key) {
    if (!v.is_number_integer())
        throw ParseError("config key '" + key + "': expected an integer");
    return v.get<std::int64_t>();
}

bool cfg_bool(const json& v, const std::string& key) {
    if (!v.is_boolean())
        throw ParseError("config key '" + key + "': expected true or false");
    return v.get<bool>();
}

std::string cfg_string(const json& v, const std::string& key) {
    if (!v.is_string())
        throw ParseError("config key '" + key + "': expected a string");
    return v.get<std::string>();
}

void apply_camera_key(PipelineConfig& cfg, const std::string& key, const json& v) {
    if (key == "elevation_min_deg") cfg.camera.elevation_min_deg = cfg_double(v, key);
    else if (key == "elevation_max_deg") cfg.camera.elevation_max_deg = cfg_double(v, key);
    else if (key == "radius_min") cfg.camera.radius_min = cfg_double(v, key);
    else if (key == "radius_max") cfg.camera.radius_max = cfg_double(v, key);
    else if (key == "vertical_fov_deg") cfg.camera.vertical_fov_deg = cfg_double(v, key);
    else if (key == "height") cfg.camera.height = static_cast<int>(cfg_int(v, key));
    else if (key == "width") cfg.camera.width = static_cast<int>(cfg_int(v, key));
    else if (key == "max_resamples")
        cfg.camera.max_resamples = static_cast<int>(cfg_int(v, key));
    else throw ParseError("unknown config key 'camera." + key + "'");
}

void apply_axes_key(PipelineConfig& cfg, const std::string& key, const json& v) {
    if (key == "updown_axis") cfg.axes.updown_axis = static_cast<int>(cfg_int(v, key));
    else if (key == "leftright_axis")
        cfg.axes.leftright_axis = static_cast<int>(cfg_int(v, key));
    else if (key == "split_updown") cfg.axes.updown_split = cfg_double(v, key);
    else if (key == "split_leftright") cfg.axes.leftright_split = cfg_double(v, key);
    else throw ParseError("unknown config key 'axes." + key + "'");
}

void apply_config_key(PipelineConfig& cfg, const std::string& key, const json& v) {
    if (key == "seed") {
        if (!v.is_number_integer())
            throw ParseError("config key 'seed': expected an integer");
        cfg.seed = v.get<std::uint64_t>();
    } else if (key == "spurious_max_frames") {
        cfg.spurious_max_frames = cfg_int(v, key);
    } else if (key == "spurious_min_travel") {
        cfg.spurious_min_travel = cfg_double(v, key);
    } else if (key == "divergence_ratio") {
        cfg.divergence_ratio = cfg_double(v, key);
    } else if (key == "sigma2") {
        cfg.sigma2 = cfg_double(v, key);
    } else if (key == "iou_success") {
        cfg.iou_success = cfg_double(v, key);
    } else if (key == "vertex_success") {
        cfg.vertex_success = cfg_double(v, key);
    } else if (key == "camera") {
        if (!v.is_object()) throw ParseError("config key 'camera': expected an object");
        for (const auto& [k, val] : v.items()) apply_camera_key(cfg, k, val);
    } else if (key == "axes") {
        if (!v.is_object()) throw ParseError("config key 'axes': expected an object");
        for (const auto& [k, val] : v.items()) apply_axes_key(cfg, k, val);
    } else if (key == "template_bank") {
        cfg.template_bank_path = cfg_string(v, key);
    } else if (key == "capitalized_garments") {
        cfg.capitalized_garments = cfg_bool(v, key);
    } else if (key == "approach_height") {
        cfg.approach_height = cfg_double(v, key);
    } else if (key == "picker_radius") {
        cfg.picker_radius = cfg_double(v, key);
    } else if (key == "contact_speed") {
        cfg.contact_speed = cfg_double(v, key);
    } else if (key == "transit_multiplier") {
        cfg.transit_multiplier = cfg_double(v, key);
    } else if (key == "kp_squared") {
        cfg.kp_squared = cfg_bool(v, key);
    } else if (key == "quantile_weak") {
        cfg.quantile_weak = cfg_bool(v, key);
    } else {
        throw ParseError("unknown config key '" + key + "'");
    }
}

}  // namespace

PipelineConfig parse_config(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("config is not valid JSON");
    if (!doc.is_object()) throw ParseError("config must be a JSON object");
    PipelineConfig cfg;
    for (const auto& [key, value] : doc.items()) apply_config_key(cfg, key, value);
    validate_config(cfg);
    return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    return parse_config(load_text(path));
}

void validate_config(const PipelineConfig& cfg) {
    if (cfg.spurious_max_frames < 0)
        throw ValidationError("spurious_max_frames must be non-negative");
    if (cfg.spurious_min_travel < 0.0)
        throw ValidationError("spurious_min_travel must be non-negative");
    if (!(cfg.divergence_ratio > 0.0))
        throw ValidationError("divergence_ratio must be positive");
    if (!(cfg.sigma2 > 0.0)) throw ValidationError("sigma2 must be positive");
    if (!(cfg.iou_success > 0.0 && cfg.iou_success <= 1.0))
        throw ValidationError("iou_success must be in (0, 1]");
    if (!(cfg.vertex_success > 0.0))
        throw ValidationError("vertex_success must be positive");
    if (cfg.camera.elevation_min_deg < 0.0 || cfg.camera.elevation_max_deg > 90.0 ||
        cfg.camera.elevation_min_deg > cfg.camera.elevation_max_deg)
        throw ValidationError("camera elevation range must sit inside [0, 90]");
    if (!(cfg.camera.radius_min > 0.0) || cfg.camera.radius_min > cfg.camera.radius_max)
        throw ValidationError("camera radius range must be positive and ordered");
    if (!(cfg.camera.vertical_fov_deg > 0.0 && cfg.camera.vertical_fov_deg < 180.0))
        throw ValidationError("camera field of view must be in (0, 180)");
    if (cfg.camera.height <= 0 || cfg.camera.width <= 0)
        throw ValidationError("camera image size must be positive");
    if (cfg.camera.max_resamples <= 0)
        throw ValidationError("camera.max_resamples must be positive");
    if (cfg.axes.updown_axis < 0 || cfg.axes.updown_axis > 2 ||
        cfg.axes.leftright_axis < 0 || cfg.axes.leftright_axis > 2 ||
        cfg.axes.updown_axis == cfg.axes.leftright_axis)
        throw ValidationError("axis indices must be distinct and in {0, 1, 2}");
    if (!(cfg.axes.updown_split > 0.0 && cfg.axes.updown_split < 1.0) ||
        !(cfg.axes.leftright_split > 0.0 && cfg.axes.leftright_split < 1.0))
        throw ValidationError("axis splits must be strictly inside (0, 1)");
    if (!(cfg.approach_height > 0.0)) throw ValidationError("approach_height must be positive");
    if (cfg.picker_radius < 0.0) throw ValidationError("picker_radius must be non-negative");
    if (!(cfg.contact_speed > 0.0)) throw ValidationError("contact_speed must be positive");
    if (!(cfg.transit_multiplier > 0.0))
        throw ValidationError("transit_multiplier must be positive");
    if (!(cfg.approach_height > cfg.picker_radius))
        throw ValidationError("approach_height must exceed picker_radius");
}

TemplateBank resolve_template_bank(const PipelineConfig& cfg,
                                   const std::string& override_path) {
    if (!override_path.empty()) return TemplateBank::load(override_path);
    if (const char* env = std::getenv("BIFOLD_TEMPLATE_BANK"); env && *env)
        return TemplateBank::load(env);
    if (!cfg.template_bank_path.empty()) return TemplateBank::load(cfg.template_bank_path);
    return TemplateBank::builtin();
}

// --- per-sequence pipeline ----------------------------------------------------

namespace {

std::size_t frame_index(const SequenceRecord& rec, std::int64_t t) {
    const auto it = std::lower_bound(
        rec.frames.begin(), rec.frames.end(), t,
        [](const FrameRecord& fr, std::int64_t value) { return fr.t < value; });
    if (it == rec.frames.end() || it->t != t)
        throw ValidationError("no frame with timestamp " + std::to_string(t));
    return static_cast<std::size_t>(it - rec.frames.begin());
}

Vec3 cloth_centroid(const std::vector<Vec3>& vertices) {
    Vec3 sum;
    for (const Vec3& v : vertices) sum = sum + v;
    return sum / static_cast<double>(vertices.size());
}

std::vector<Vec3> positions_at(const SequenceRecord& rec, std::int64_t t,
                               const std::vector<std::int32_t>& ids) {
    const FrameRecord& fr = rec.frames[frame_index(rec, t)];
    std::vector<Vec3> out;
    out.reserve(ids.size());
    for (std::int32_t id : ids) out.push_back(fr.cloth_vertices[static_cast<std::size_t>(id)]);
    return out;
}

struct ResolvedAction {
    const ActionSegment* segment = nullptr;
    SemanticLabel pick_label;
    SemanticLabel place_label;
    std::optional<Hand> single_arm;
};

RegionLabel pick_region_of(const HandAction& action, const SequenceRecord& rec,
                           const PipelineConfig& cfg) {
    return hand_pick_region(action, rec.nocs_vertices, cfg.axes);
}

// The place lookup runs against the mesh as it stood when the hand started
// moving: once the flap lands, the nearest vertex would be on the flap
// itself rather than on the part of the garment it covered.
RegionLabel place_region_of(const HandAction& action, const SequenceRecord& rec,
                            const PipelineConfig& cfg) {
    const FrameRecord& start = rec.frames[frame_index(rec, action.start_frame)];
    return hand_place_region(action, start.cloth_vertices, rec.nocs_vertices, cfg.axes);
}

HandAnnotation hand_annotation(const HandAction& action) {
    HandAnnotation out;
    out.start_frame = action.start_frame;
    out.end_frame = action.end_frame;
    out.pick_vertex_ids = action.pick_vertex_ids;
    out.place_vertex_ids = action.place_vertex_ids;
    out.pick_point = action.pick_point;
    out.place_point = action.place_point;
    return out;
}

}  // namespace

AnnotateResult annotate_sequence(const SequenceRecord& rec, const PipelineConfig& cfg,
                                 const TemplateBank& bank) {
    validate_sequence(rec);
    validate_config(cfg);
    validate_bank(bank);

    // Divergence gate: any frame whose edge-length spread blows up against
    // the canonical mesh disqualifies the whole sequence.
    const double reference = divergence_score(Mesh{rec.nocs_vertices, rec.faces});
    if (reference < 1e-12) return DropReason{"divergent"};
    for (std::size_t i = 0; i < rec.frames.size(); ++i) {
        if (divergence_score(rec.frame_mesh(i)) / reference > cfg.divergence_ratio)
            return DropReason{"divergent"};
    }

    const auto keep = [&](Hand hand) {
        return filter_spurious(extract_hand_actions(rec, hand), cfg.spurious_max_frames,
                               cfg.spurious_min_travel);
    };
    const std::vector<ActionSegment> segments =
        align_bimanual(keep(Hand::Left), keep(Hand::Right));
    if (segments.empty()) return DropReason{"no_actions"};

    // Location labels. Single-arm grasps feed the one hand's region in for
    // both hands, so the fused label keeps every axis of that region.
    std::vector<ResolvedAction> resolved;
    std::int64_t actions_dropped = 0;
    for (const ActionSegment& seg : segments) {
        RegionLabel left_pick, right_pick, left_place, right_place;
        if (seg.left) {
            left_pick = pick_region_of(*seg.left, rec, cfg);
            left_place = place_region_of(*seg.left, rec, cfg);
        }
        if (seg.right) {
            right_pick = pick_region_of(*seg.right, rec, cfg);
            right_place = place_region_of(*seg.right, rec, cfg);
        }
        if (!seg.left) left_pick = right_pick, left_place = right_place;
        if (!seg.right) right_pick = left_pick, right_place = left_place;

        ResolvedAction out;
        out.segment = &seg;
        try {
            out.pick_label = resolve_location(left_pick, right_pick, ActionType::Pick,
                                              rec.garment_category);
        } catch (const UnresolvableLocationError&) {
            ++actions_dropped;
            continue;
        }
        out.place_label = resolve_location(left_place, right_place, ActionType::Place,
                                           rec.garment_category, out.pick_label);
        if (seg.arm_usage == ArmUsage::LeftOnly) out.single_arm = Hand::Left;
        if (seg.arm_usage == ArmUsage::RightOnly) out.single_arm = Hand::Right;
        resolved.push_back(out);
    }
    if (resolved.empty()) return DropReason{"no_actions"};

    // Gather every grasp-set vertex position: pick sets at the grasp frame,
    // place sets at the release frame. One camera must see them all.
    std::vector<Vec3> points;
    std::vector<std::vector<Vec3>> point_groups;  // 4 groups per hand annotation
    std::vector<HandAnnotation> hands;
    for (const ResolvedAction& ra : resolved) {
        for (const HandAction* action :
             {ra.segment->left ? &*ra.segment->left : nullptr,
              ra.segment->right ? &*ra.segment->right : nullptr}) {
            if (!action) continue;
            HandAnnotation h = hand_annotation(*action);
            point_groups.push_back(positions_at(rec, action->start_frame, h.pick_vertex_ids));
            point_groups.push_back(positions_at(rec, action->end_frame, h.place_vertex_ids));
            hands.push_back(std::move(h));
        }
    }
    for (const auto& group : point_groups)
        points.insert(points.end(), group.begin(), group.end());

    Rng rng(cfg.seed ^ fnv1a64(rec.sequence_id));
    AnnotationRecord record;
    record.sequence_id = rec.sequence_id;
    record.garment_category = rec.garment_category;

    std::vector<Pixel> pixels;
    try {
        auto [camera, projected] = annotate_pixels(
            points, rng, cloth_centroid(rec.frames.front().cloth_vertices), cfg.camera);
        record.camera = camera;
        pixels = std::move(projected);
    } catch (const NoValidCameraError&) {
        return DropReason{"no_valid_camera"};
    }

    // Slice the projected pixels back onto the hands they came from.
    std::size_t cursor = 0;
    for (std::size_t h = 0; h < hands.size(); ++h) {
        auto take = [&](std::size_t count) {
            std::vector<Pixel> out(pixels.begin() + static_cast<std::ptrdiff_t>(cursor),
                                   pixels.begin() + static_cast<std::ptrdiff_t>(cursor + count));
            cursor += count;
            return out;
        };
        hands[h].pick_pixels = take(point_groups[2 * h].size());
        hands[h].place_pixels = take(point_groups[2 * h + 1].size());
    }

    const std::string garment_form =
        garment_surface_form(rec.garment_category, cfg.capitalized_garments);
    AnnotatedSequence result;
    std::size_t hand_cursor = 0;
    for (std::size_t k = 0; k < resolved.size(); ++k) {
        const ResolvedAction& ra = resolved[k];
        ActionAnnotation act;
        act.arm_usage = ra.segment->arm_usage;
        if (ra.segment->left) act.left = hands[hand_cursor++];
        if (ra.segment->right) act.right = hands[hand_cursor++];
        act.pick_label = ra.pick_label;
        act.place_label = ra.place_label;
        act.kind = classify_action(ra.pick_label, ra.place_label);
        act.single_arm = ra.single_arm;

        const InstructionRecord instr =
            instantiate(bank, act.kind, garment_form, ra.pick_label, ra.place_label,
                        ra.single_arm, rng);
        act.template_index = instr.template_index;
        act.instruction = instr.text;

        const std::string prefix = rec.sequence_id + ".a" + std::to_string(k) + ".";
        for (const auto& [hand, name] :
             {std::pair<const std::optional<HandAnnotation>&, const char*>{act.left, "left"},
              std::pair<const std::optional<HandAnnotation>&, const char*>{act.right,
                                                                           "right"}}) {
            if (!hand) continue;
            result.heatmaps.push_back(
                {prefix + name + ".pick.heatmap",
                 gaussian_heatmap(hand->pick_pixels, cfg.camera.height, cfg.camera.width,
                                  cfg.sigma2)});
            result.heatmaps.push_back(
                {prefix + name + ".place.heatmap",
                 gaussian_heatmap(hand->place_pixels, cfg.camera.height, cfg.camera.width,
                                  cfg.sigma2)});
        }
        record.actions.push_back(std::move(act));
    }

    result.record = std::move(record);
    result.actions_dropped = actions_dropped;
    validate_annotation(result.record);
    return result;
}

// --- directory runners --------------------------------------------------------

namespace {

std::vector<std::filesystem::path> sequence_files(const std::filesystem::path& input_dir) {
    if (!std::filesystem::is_directory(input_dir))
        throw FormatError("input directory does not exist: " + input_dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(input_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::filesystem::path& p = entry.path();
        if (p.extension() != ".json" || p.filename() == "manifest.json") continue;
        files.push_back(p);
    }
    std::sort(files.begin(), files.end());
    return files;
}

struct FileOutcome {
    std::string kept_id;                              // set when kept
    std::pair<std::string, std::string> dropped;      // id, reason
    std::pair<std::string, std::string> failed;       // file, error
};

std::string manifest_json(const std::vector<FileOutcome>& outcomes) {
    std::vector<std::string> kept;
    std::vector<std::pair<std::string, std::string>> dropped, failed;
    for (const FileOutcome& o : outcomes) {
        if (!o.kept_id.empty()) kept.push_back(o.kept_id);
        if (!o.dropped.first.empty()) dropped.push_back(o.dropped);
        if (!o.failed.first.empty()) failed.push_back(o.failed);
    }
    std::sort(kept.begin(), kept.end());
    std::sort(dropped.begin(), dropped.end());
    std::sort(failed.begin(), failed.end());

    const auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };

    std::string out = "{\n  \"kept\": [";
    for (std::size_t i = 0; i < kept.size(); ++i)
        out += (i ? ", " : "") + quote(kept[i]);
    out += "],\n  \"dropped\": [";
    for (std::size_t i = 0; i < dropped.size(); ++i) {
        out += i ? ",\n    " : "\n    ";
        out += "{\"sequence_id\": " + quote(dropped[i].first) +
               ", \"reason\": " + quote(dropped[i].second) + "}";
    }
    out += dropped.empty() ? "]" : "\n  ]";
    out += ",\n  \"failed\": [";
    for (std::size_t i = 0; i < failed.size(); ++i) {
        out += i ? ",\n    " : "\n    ";
        out += "{\"file\": " + quote(failed[i].first) +
               ", \"error\": " + quote(failed[i].second) + "}";
    }
    out += failed.empty() ? "]" : "\n  ]";
    out += "\n}\n";
    return out;
}

RunSummary summarize(const std::vector<FileOutcome>& outcomes,
                     const std::filesystem::path& output_dir) {
    save_text(output_dir / "manifest.json", manifest_json(outcomes));
    RunSummary summary;
    for (const FileOutcome& o : outcomes) {
        if (!o.kept_id.empty()) ++summary.kept;
        if (!o.dropped.first.empty()) ++summary.dropped;
        if (!o.failed.first.empty()) ++summary.failed;
    }
    return summary;
}

template <typename PerFile>
std::vector<FileOutcome> process_files(const std::vector<std::filesystem::path>& files,
                                       int jobs, PerFile&& per_file) {
    std::vector<FileOutcome> outcomes(files.size());
    const int threads = std::max(1, jobs);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(files.size()); ++i) {
        const std::filesystem::path& file = files[static_cast<std::size_t>(i)];
        FileOutcome& outcome = outcomes[static_cast<std::size_t>(i)];
        try {
            per_file(file, outcome);
        } catch (const std::exception& e) {
            outcome = {};
            outcome.failed = {file.filename().string(), e.what()};
        } catch (...) {
            outcome = {};
            outcome.failed = {file.filename().string(), "unknown error"};
        }
    }
    return outcomes;
}

}  // namespace

RunSummary run_annotate(const std::filesystem::path& input_dir,
                        const std::filesystem::path& output_dir,
                        const PipelineConfig& cfg, int jobs) {
    validate_config(cfg);
    const TemplateBank bank = resolve_template_bank(cfg);
    const auto files = sequence_files(input_dir);
    std::filesystem::create_directories(output_dir);

    auto outcomes = process_files(files, jobs, [&](const std::filesystem::path& file,
                                                   FileOutcome& outcome) {
        const SequenceRecord rec = load_sequence(file);
        const AnnotateResult result = annotate_sequence(rec, cfg, bank);
        if (const auto* drop = std::get_if<DropReason>(&result)) {
            outcome.dropped = {rec.sequence_id, drop->reason};
            return;
        }
        const auto& annotated = std::get<AnnotatedSequence>(result);
        save_text(output_dir / (rec.sequence_id + ".annotation.json"),
                  write_annotation(annotated.record));
        for (const HeatmapOutput& hm : annotated.heatmaps)
            write_heatmap(hm.map, output_dir / (hm.name + ".json"));
        outcome.kept_id = rec.sequence_id;
    });
    return summarize(outcomes, output_dir);
}

RunSummary run_filter(const std::filesystem::path& input_dir,
                      const std::filesystem::path& output_dir,
                      const PipelineConfig& cfg, int jobs) {
    validate_config(cfg);
    const auto files = sequence_files(input_dir);
    std::filesystem::create_directories(output_dir);

    auto outcomes = process_files(files, jobs, [&](const std::filesystem::path& file,
                                                   FileOutcome& outcome) {
        const SequenceRecord rec = load_sequence(file);
        const double reference = divergence_score(Mesh{rec.nocs_vertices, rec.faces});
        bool divergent = reference < 1e-12;
        for (std::size_t i = 0; !divergent && i < rec.frames.size(); ++i)
            divergent = divergence_score(rec.frame_mesh(i)) / reference > cfg.divergence_ratio;
        if (divergent) outcome.dropped = {rec.sequence_id, "divergent"};
        else outcome.kept_id = rec.sequence_id;
    });
    return summarize(outcomes, output_dir);
}

}  // namespace bifold
