#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bifold/errors.hpp"
#include "bifold/heatmap.hpp"
#include "bifold/io.hpp"
#include "bifold/metrics.hpp"
#include "bifold/pipeline.hpp"
#include "bifold/primitive.hpp"
#include "bifold/stats.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct GlobalArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1;
    std::string output;
};

// Loads the config and applies the --seed override. Anything wrong here is
// a configuration problem (exit code 2), not a runtime failure.
bifold::PipelineConfig make_config(const GlobalArgs& g) {
    bifold::PipelineConfig cfg;
    if (!g.config_path.empty()) cfg = bifold::load_config(g.config_path);
    if (g.seed_set) cfg.seed = g.seed;
    bifold::validate_config(cfg);
    return cfg;
}

bifold::Vec3 parse_triple(const std::string& s) {
    bifold::Vec3 v;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',' ||
        !(in >> std::ws).eof())
        throw bifold::ValidationError("expected x,y,z coordinates, got '" + s + "'");
    return v;
}

// --- shared JSON access helpers ----------------------------------------------

const json& need(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw bifold::ParseError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw bifold::ParseError(path + ": missing key '" + std::string(key) + "'");
    return *it;
}

double num(const json& v, const std::string& path) {
    if (!v.is_number()) throw bifold::ParseError(path + ": expected a number");
    return v.get<double>();
}

bifold::Pixel pixel_of(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2)
        throw bifold::ParseError(path + ": expected [row, col]");
    return {num(v[0], path), num(v[1], path)};
}

bifold::Vec3 vec3_of(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3)
        throw bifold::ParseError(path + ": expected [x, y, z]");
    return {num(v[0], path), num(v[1], path), num(v[2], path)};
}

json parse_file(const fs::path& path) {
    json doc = json::parse(bifold::load_text(path), nullptr, false);
    if (doc.is_discarded())
        throw bifold::ParseError("invalid JSON: " + path.string());
    return doc;
}

// --- annotate / filter --------------------------------------------------------

int cmd_annotate(const GlobalArgs& g, const bifold::PipelineConfig& cfg,
                 const std::string& input, bool filter_only) {
    const bifold::RunSummary summary =
        filter_only ? bifold::run_filter(input, g.output, cfg, g.jobs)
                    : bifold::run_annotate(input, g.output, cfg, g.jobs);
    std::cout << "kept " << summary.kept << " dropped " << summary.dropped << " failed "
              << summary.failed << "\n";
    return summary.failed > 0 ? kExitFailure : kExitOk;
}

// --- targets --------------------------------------------------------------------

int cmd_targets(const GlobalArgs& g, const bifold::PipelineConfig& cfg,
                const std::string& input, const std::string& mask_path,
                std::string name) {
    const json doc = parse_file(input);
    int height = cfg.camera.height, width = cfg.camera.width;
    if (doc.contains("height")) height = static_cast<int>(num(doc["height"], "$.height"));
    if (doc.contains("width")) width = static_cast<int>(num(doc["width"], "$.width"));
    std::vector<bifold::Pixel> centers;
    const json& arr = need(doc, "centers", "$");
    if (!arr.is_array()) throw bifold::ParseError("$.centers: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i)
        centers.push_back(pixel_of(arr[i], "$.centers[" + std::to_string(i) + "]"));

    bifold::Heatmap map = bifold::gaussian_heatmap(centers, height, width, cfg.sigma2);
    if (!mask_path.empty()) map = bifold::apply_mask(map, bifold::read_mask(mask_path));

    if (name.empty()) name = fs::path(input).stem().string() + ".heatmap";
    fs::create_directories(g.output);
    const fs::path header = fs::path(g.output) / (name + ".json");
    bifold::write_heatmap(map, header);
    std::cout << header.string() << "\n";
    return kExitOk;
}

// --- eval -----------------------------------------------------------------------

int cmd_eval(const GlobalArgs& g, const bifold::PipelineConfig& cfg,
             const std::string& input, std::vector<double> taus) {
    const json doc = parse_file(input);
    const fs::path base = fs::path(input).parent_path();
    if (taus.empty()) taus = {5.0, 10.0};
    std::sort(taus.begin(), taus.end());

    std::string report = "{";
    bool first_key = true;
    const auto emit = [&](const std::string& key, const std::string& value) {
        report += first_key ? "\n" : ",\n";
        report += "  \"" + key + "\": " + value;
        first_key = false;
    };

    if (doc.contains("keypoints")) {
        const json& entries = doc["keypoints"];
        std::vector<bifold::Pixel> preds;
        std::vector<std::vector<bifold::Pixel>> gts;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string path = "$.keypoints[" + std::to_string(i) + "]";
            preds.push_back(pixel_of(need(entries[i], "pred", path), path + ".pred"));
            std::vector<bifold::Pixel> set;
            for (const json& p : need(entries[i], "gt", path))
                set.push_back(pixel_of(p, path + ".gt"));
            gts.push_back(std::move(set));
        }
        std::string ap = "{";
        for (std::size_t i = 0; i < taus.size(); ++i) {
            ap += i ? ", " : "";
            ap += "\"" + bifold::format_g6(taus[i]) +
                  "\": " + bifold::format_g6(bifold::ap_at(preds, gts, taus[i]));
        }
        emit("ap", ap + "}");
        emit("kp_error_px",
             bifold::format_g6(bifold::kp_error(preds, gts, cfg.kp_squared)));
    }

    if (doc.contains("heatmaps")) {
        const json& entries = doc["heatmaps"];
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string path = "$.heatmaps[" + std::to_string(i) + "]";
            const json& entry = entries[i];
            const bifold::Heatmap map = bifold::read_heatmap(
                base / need(entry, "pred", path).get<std::string>());
            std::vector<bifold::PixelIndex> gts;
            for (const json& p : need(entry, "gt_pixels", path)) {
                const bifold::Pixel px = pixel_of(p, path + ".gt_pixels");
                gts.push_back({static_cast<int>(px.row), static_cast<int>(px.col)});
            }
            sum += bifold::quantile(map, gts, !cfg.quantile_weak);
            ++count;
        }
        if (count > 0) emit("quantile_pct", bifold::format_g6(sum / count));
    }

    if (doc.contains("masks")) {
        const json& entries = doc["masks"];
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string path = "$.masks[" + std::to_string(i) + "]";
            const json& entry = entries[i];
            const bifold::PixelMask a =
                bifold::read_mask(base / need(entry, "pred", path).get<std::string>());
            const bifold::PixelMask b =
                bifold::read_mask(base / need(entry, "gt", path).get<std::string>());
            sum += bifold::iou(a, b, cfg.iou_success).value;
            ++count;
        }
        if (count > 0) {
            const double mean = sum / count;
            emit("iou", bifold::format_g6(mean));
            emit("success_iou80", mean >= cfg.iou_success ? "true" : "false");
        }
    }

    if (doc.contains("meshes")) {
        const json& entries = doc["meshes"];
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string path = "$.meshes[" + std::to_string(i) + "]";
            const json& entry = entries[i];
            std::vector<bifold::Vec3> a, b;
            for (const json& p : need(entry, "pred", path))
                a.push_back(vec3_of(p, path + ".pred"));
            for (const json& p : need(entry, "gt", path))
                b.push_back(vec3_of(p, path + ".gt"));
            sum += bifold::vertex_error(a, b, cfg.vertex_success).meters;
            ++count;
        }
        if (count > 0) {
            const double mean = sum / count;
            emit("vertex_error_m", bifold::format_g6(mean));
            emit("error_mm", bifold::format_g6(bifold::error_mm(mean)));
            emit("success_vertex", mean < cfg.vertex_success ? "true" : "false");
        }
    }

    report += first_key ? "}" : "\n}";
    report += "\n";
    std::cout << report;
    if (!g.output.empty()) {
        fs::create_directories(g.output);
        bifold::save_text(fs::path(g.output) / "metrics.json", report);
    }
    return kExitOk;
}

// --- primitive --------------------------------------------------------------------

std::string waypoint_line(const bifold::Waypoint& w, const char* arm) {
    std::string out = "{";
    if (arm) out += "\"arm\": \"" + std::string(arm) + "\", ";
    out += "\"t\": " + std::to_string(w.t);
    out += ", \"phase\": " + std::to_string(w.phase);
    out += ", \"position\": [" + bifold::format_g6(w.position.x) + ", " +
           bifold::format_g6(w.position.y) + ", " + bifold::format_g6(w.position.z) + "]";
    out += ", \"gripper\": \"" + std::string(bifold::to_string(w.gripper)) + "\"}";
    return out;
}

struct PrimitiveArgs {
    std::string pick, place;
    std::vector<std::string> left, right;
    std::optional<double> radius, approach, speed, multiplier, surface;
    std::string start;
};

int cmd_primitive(const GlobalArgs& g, const bifold::PipelineConfig& cfg,
                  const PrimitiveArgs& args) {
    const bool single = !args.pick.empty() || !args.place.empty();
    const bool dual = !args.left.empty() || !args.right.empty();
    if (single == dual || (single && (args.pick.empty() || args.place.empty())) ||
        (dual && (args.left.size() != 2 || args.right.size() != 2))) {
        std::cerr << "primitive needs either --pick and --place, or --left and --right "
                     "(each with pick and place)\n";
        return kExitConfig;
    }

    bifold::PrimitiveParams params;
    params.picker_radius = args.radius.value_or(cfg.picker_radius);
    params.approach_height = args.approach.value_or(cfg.approach_height);
    params.contact_speed = args.speed.value_or(cfg.contact_speed);
    params.transit_multiplier = args.multiplier.value_or(cfg.transit_multiplier);
    params.surface_z = args.surface.value_or(0.0);
    if (!args.start.empty()) params.start = parse_triple(args.start);

    std::string lines;
    if (single) {
        const bifold::WaypointSchedule schedule = bifold::plan_pick_place(
            parse_triple(args.pick), parse_triple(args.place), params);
        for (const bifold::Waypoint& w : schedule.waypoints)
            lines += waypoint_line(w, nullptr) + "\n";
    } else {
        const bifold::BimanualSchedule schedule = bifold::plan_bimanual(
            bifold::plan_pick_place(parse_triple(args.left[0]), parse_triple(args.left[1]),
                                    params),
            bifold::plan_pick_place(parse_triple(args.right[0]),
                                    parse_triple(args.right[1]), params));
        for (std::size_t i = 0; i < schedule.left.waypoints.size(); ++i) {
            lines += waypoint_line(schedule.left.waypoints[i], "left") + "\n";
            lines += waypoint_line(schedule.right.waypoints[i], "right") + "\n";
        }
    }

    std::cout << lines;
    if (!g.output.empty()) {
        fs::create_directories(g.output);
        bifold::save_text(fs::path(g.output) / "schedule.jsonl", lines);
    }
    return kExitOk;
}

// --- stats ----------------------------------------------------------------------

std::string stats_json(const bifold::StatsReport& report) {
    using bifold::format_g6;
    std::string out = "{\n  \"per_garment\": {";
    bool first = true;
    for (const auto& [garment, counts] : report.per_garment) {
        out += first ? "\n" : ",\n";
        out += "    \"" + garment + "\": {\"demos\": " + std::to_string(counts.demos) +
               ", \"meshes\": " + std::to_string(counts.meshes) +
               ", \"actions\": " + std::to_string(counts.actions) +
               ", \"unique_instructions\": " + std::to_string(counts.unique_instructions) +
               "}";
        first = false;
    }
    out += first ? "}" : "\n  }";
    out += ",\n  \"total_sequences\": " + std::to_string(report.total_sequences);
    out += ",\n  \"total_actions\": " + std::to_string(report.total_actions);
    out += ",\n  \"unique_instructions\": " + std::to_string(report.unique_instructions);
    out += ",\n  \"actions_per_sequence\": {";
    first = true;
    for (const auto& [count, sequences] : report.actions_per_sequence) {
        out += first ? "" : ", ";
        out += "\"" + std::to_string(count) + "\": " + std::to_string(sequences);
        first = false;
    }
    out += "},\n  \"fold_directions\": [";
    first = true;
    for (const auto& [pair, count] : report.fold_directions) {
        out += first ? "\n" : ",\n";
        out += "    {\"from\": \"" + pair.first + "\", \"to\": \"" + pair.second +
               "\", \"count\": " + std::to_string(count) + "}";
        first = false;
    }
    out += first ? "]" : "\n  ]";
    out += ",\n  \"refinement_actions\": " + std::to_string(report.refinement_actions);
    out += ",\n  \"sleeve_first\": {";
    first = true;
    for (const auto& [which, count] : report.sleeve_first) {
        out += first ? "" : ", ";
        out += "\"" + which + "\": " + std::to_string(count);
        first = false;
    }
    out += "},\n  \"mask_distance_histogram\": [";
    for (std::size_t i = 0; i < report.mask_distance_histogram.size(); ++i) {
        out += i ? ", " : "";
        out += std::to_string(report.mask_distance_histogram[i]);
    }
    out += "]\n}\n";
    return out;
}

int cmd_stats(const GlobalArgs& g, const std::string& input, const std::string& masks_dir,
              bool csv) {
    std::vector<fs::path> files;
    if (!fs::is_directory(input))
        throw bifold::FormatError("input directory does not exist: " + input);
    for (const auto& entry : fs::directory_iterator(input)) {
        if (entry.is_regular_file() &&
            entry.path().filename().string().ends_with(".annotation.json"))
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<bifold::AnnotationRecord> records;
    records.reserve(files.size());
    for (const fs::path& file : files) records.push_back(bifold::load_annotation(file));

    std::map<std::string, bifold::PixelMask> masks;
    if (!masks_dir.empty()) {
        for (const bifold::AnnotationRecord& rec : records) {
            const fs::path mask = fs::path(masks_dir) / (rec.sequence_id + ".mask.json");
            if (fs::exists(mask)) masks.emplace(rec.sequence_id, bifold::read_mask(mask));
        }
    }

    const bifold::StatsReport report = bifold::dataset_stats(records, masks);
    const std::string text = stats_json(report);
    std::cout << text;

    if (!g.output.empty()) {
        fs::create_directories(g.output);
        bifold::save_text(fs::path(g.output) / "stats.json", text);
        if (csv) {
            std::string histogram = "actions,sequences\n";
            for (const auto& [count, sequences] : report.actions_per_sequence)
                histogram +=
                    std::to_string(count) + "," + std::to_string(sequences) + "\n";
            bifold::save_text(fs::path(g.output) / "actions_per_sequence.csv", histogram);
            std::string distances = "bin,count\n";
            for (std::size_t i = 0; i < report.mask_distance_histogram.size(); ++i)
                distances += std::to_string(i) + "," +
                             std::to_string(report.mask_distance_histogram[i]) + "\n";
            bifold::save_text(fs::path(g.output) / "mask_distance.csv", distances);
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Annotation pipeline and evaluation tools for bimanual "
                 "cloth-folding demonstrations"};
    app.require_subcommand(1);

    GlobalArgs g;
    app.add_option("--config", g.config_path, "JSON config file");
    auto* seed_opt = app.add_option("--seed", g.seed, "Seed override");
    app.add_option("--jobs", g.jobs, "Worker pool size")->check(CLI::PositiveNumber);
    app.add_option("--output", g.output, "Output directory");

    std::string input;
    auto* annotate = app.add_subcommand("annotate", "Annotate a directory of sequences");
    annotate->add_option("input", input, "Directory of sequence JSON files")->required();
    annotate->fallthrough();

    auto* filter = app.add_subcommand("filter", "Divergence-filter a directory");
    filter->add_option("input", input, "Directory of sequence JSON files")->required();
    filter->fallthrough();

    std::string mask_path, target_name;
    auto* targets = app.add_subcommand("targets", "Build a supervision heatmap");
    targets->add_option("input", input, "JSON file with pixel centers")->required();
    targets->add_option("--mask", mask_path, "Mask file to constrain the support");
    targets->add_option("--name", target_name, "Output file stem");
    targets->fallthrough();

    std::vector<double> taus;
    auto* eval = app.add_subcommand("eval", "Evaluate predictions against ground truth");
    eval->add_option("input", input, "Predictions JSON file")->required();
    eval->add_option("--tau", taus, "Keypoint distance thresholds (pixels)");
    eval->fallthrough();

    PrimitiveArgs prim;
    auto* primitive = app.add_subcommand("primitive", "Plan a pick-and-place schedule");
    primitive->add_option("--pick", prim.pick, "Pick point x,y,z");
    primitive->add_option("--place", prim.place, "Place point x,y,z");
    primitive->add_option("--left", prim.left, "Left arm pick and place points")
        ->expected(2);
    primitive->add_option("--right", prim.right, "Right arm pick and place points")
        ->expected(2);
    primitive->add_option("--radius", prim.radius, "Picker radius (m)");
    primitive->add_option("--approach", prim.approach, "Approach height (m)");
    primitive->add_option("--speed", prim.speed, "Contact speed (m per step)");
    primitive->add_option("--multiplier", prim.multiplier, "Transit speed multiplier");
    primitive->add_option("--surface", prim.surface, "Surface height (m)");
    primitive->add_option("--start", prim.start, "Start position x,y,z");
    primitive->fallthrough();

    std::string masks_dir;
    bool csv = false;
    auto* stats = app.add_subcommand("stats", "Aggregate dataset statistics");
    stats->add_option("input", input, "Directory of annotation files")->required();
    stats->add_option("--masks", masks_dir, "Directory of garment masks");
    stats->add_flag("--csv", csv, "Also write CSV histograms");
    stats->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    g.seed_set = seed_opt->count() > 0;

    bifold::PipelineConfig cfg;
    try {
        cfg = make_config(g);
        if (annotate->parsed() || filter->parsed())
            bifold::resolve_template_bank(cfg);  // surface bank problems as config errors
    } catch (const bifold::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (annotate->parsed() || filter->parsed()) {
            if (g.output.empty()) {
                std::cerr << "--output is required\n";
                return kExitConfig;
            }
            return cmd_annotate(g, cfg, input, filter->parsed());
        }
        if (targets->parsed()) {
            if (g.output.empty()) {
                std::cerr << "--output is required\n";
                return kExitConfig;
            }
            return cmd_targets(g, cfg, input, mask_path, target_name);
        }
        if (eval->parsed()) return cmd_eval(g, cfg, input, taus);
        if (primitive->parsed()) return cmd_primitive(g, cfg, prim);
        if (stats->parsed()) return cmd_stats(g, input, masks_dir, csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
