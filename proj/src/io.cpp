#include "bifold/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bifold/errors.hpp"

namespace bifold {

using nlohmann::json;

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- emitting ---------------------------------------------------------------
//
// Output is produced by hand so that key order, spacing and float formatting
// are fixed: the same record always serializes to the same bytes.

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string str(const std::string& s) { return "\"" + escape(s) + "\""; }

std::string vec3(const Vec3& v) {
    return "[" + format_g6(v.x) + ", " + format_g6(v.y) + ", " + format_g6(v.z) + "]";
}

std::string pixel(const Pixel& p) {
    return "[" + format_g6(p.row) + ", " + format_g6(p.col) + "]";
}

std::string int_list(const std::vector<std::int32_t>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

template <typename T, typename Fn>
void emit_rows(std::string& out, const std::vector<T>& rows, const std::string& indent,
               Fn&& render) {
    if (rows.empty()) {
        out += "[]";
        return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += indent + "  " + render(rows[i]);
        out += (i + 1 < rows.size()) ? ",\n" : "\n";
    }
    out += indent + "]";
}

std::string face_row(const Face& f) {
    return "[" + std::to_string(f[0]) + ", " + std::to_string(f[1]) + ", " +
           std::to_string(f[2]) + "]";
}

}  // namespace

std::string write_sequence(const SequenceRecord& rec) {
    std::string out = "{\n";
    out += "  \"sequence_id\": " + str(rec.sequence_id) + ",\n";
    out += "  \"garment_category\": " + str(std::string(to_string(rec.garment_category))) +
           ",\n";
    out += "  \"faces\": ";
    emit_rows(out, rec.faces, "  ", face_row);
    out += ",\n  \"nocs_vertices\": ";
    emit_rows(out, rec.nocs_vertices, "  ", vec3);
    out += ",\n  \"frames\": ";
    if (rec.frames.empty()) {
        out += "[]";
    } else {
        out += "[\n";
        for (std::size_t i = 0; i < rec.frames.size(); ++i) {
            const FrameRecord& fr = rec.frames[i];
            out += "    {\n";
            out += "      \"t\": " + std::to_string(fr.t) + ",\n";
            out += "      \"cloth_vertices\": ";
            emit_rows(out, fr.cloth_vertices, "      ", vec3);
            out += ",\n      \"left_grip_vertex_ids\": " + int_list(fr.left_grip_vertex_ids);
            out += ",\n      \"right_grip_vertex_ids\": " + int_list(fr.right_grip_vertex_ids);
            out += "\n    }";
            out += (i + 1 < rec.frames.size()) ? ",\n" : "\n";
        }
        out += "  ]";
    }
    out += "\n}\n";
    return out;
}

namespace {

std::string label_json(const SemanticLabel& label) {
    std::string out = "{\"vertical\": ";
    out += label.vertical
               ? str(*label.vertical == Vertical::Top ? "top" : "bottom")
               : "null";
    out += ", \"horizontal\": ";
    out += label.horizontal
               ? str(*label.horizontal == Horizontal::Left ? "left" : "right")
               : "null";
    out += ", \"sleeve\": ";
    out += label.sleeve ? "true" : "false";
    return out + "}";
}

void emit_hand(std::string& out, const std::optional<HandAnnotation>& hand,
               const std::string& indent) {
    if (!hand) {
        out += "null";
        return;
    }
    const HandAnnotation& h = *hand;
    out += "{\n";
    out += indent + "  \"start_frame\": " + std::to_string(h.start_frame) + ",\n";
    out += indent + "  \"end_frame\": " + std::to_string(h.end_frame) + ",\n";
    out += indent + "  \"pick_vertex_ids\": " + int_list(h.pick_vertex_ids) + ",\n";
    out += indent + "  \"place_vertex_ids\": " + int_list(h.place_vertex_ids) + ",\n";
    out += indent + "  \"pick_point\": " + vec3(h.pick_point) + ",\n";
    out += indent + "  \"place_point\": " + vec3(h.place_point) + ",\n";
    out += indent + "  \"pick_pixels\": ";
    emit_rows(out, h.pick_pixels, indent + "  ", pixel);
    out += ",\n" + indent + "  \"place_pixels\": ";
    emit_rows(out, h.place_pixels, indent + "  ", pixel);
    out += "\n" + indent + "}";
}

}  // namespace

std::string write_annotation(const AnnotationRecord& rec) {
    std::string out = "{\n";
    out += "  \"sequence_id\": " + str(rec.sequence_id) + ",\n";
    out += "  \"garment_category\": " + str(std::string(to_string(rec.garment_category))) +
           ",\n";
    out += "  \"camera\": {\n";
    out += "    \"position\": " + vec3(rec.camera.position) + ",\n";
    out += "    \"look_at\": " + vec3(rec.camera.look_at) + ",\n";
    out += "    \"up\": " + vec3(rec.camera.up) + ",\n";
    out += "    \"vertical_fov_deg\": " + format_g6(rec.camera.vertical_fov_deg) + ",\n";
    out += "    \"height\": " + std::to_string(rec.camera.height) + ",\n";
    out += "    \"width\": " + std::to_string(rec.camera.width) + "\n";
    out += "  },\n";
    out += "  \"actions\": ";
    if (rec.actions.empty()) {
        out += "[]";
    } else {
        out += "[\n";
        for (std::size_t i = 0; i < rec.actions.size(); ++i) {
            const ActionAnnotation& a = rec.actions[i];
            out += "    {\n";
            out += "      \"arm_usage\": " + str(std::string(to_string(a.arm_usage))) + ",\n";
            out += "      \"left\": ";
            emit_hand(out, a.left, "      ");
            out += ",\n      \"right\": ";
            emit_hand(out, a.right, "      ");
            out += ",\n      \"pick_label\": " + label_json(a.pick_label) + ",\n";
            out += "      \"place_label\": " + label_json(a.place_label) + ",\n";
            out += "      \"kind\": " + str(std::string(to_string(a.kind))) + ",\n";
            out += "      \"template_index\": " + std::to_string(a.template_index) + ",\n";
            out += "      \"single_arm\": ";
            out += a.single_arm ? str(std::string(to_string(*a.single_arm))) : "null";
            out += ",\n      \"instruction\": " + str(a.instruction) + "\n";
            out += "    }";
            out += (i + 1 < rec.actions.size()) ? ",\n" : "\n";
        }
        out += "  ]";
    }
    out += "\n}\n";
    return out;
}

// --- parsing ----------------------------------------------------------------

namespace {

const json& need(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + ": missing key '" + key + "'");
    return *it;
}

std::string as_str(const json& v, const std::string& path) {
    if (!v.is_string()) throw ParseError(path + ": expected a string");
    return v.get<std::string>();
}

double as_f64(const json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path + ": expected a number");
    return v.get<double>();
}

std::int64_t as_i64(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ParseError(path + ": expected an integer");
    return v.get<std::int64_t>();
}

int as_i32(const json& v, const std::string& path) {
    std::int64_t x = as_i64(v, path);
    if (x < INT32_MIN || x > INT32_MAX) throw ParseError(path + ": integer out of range");
    return static_cast<int>(x);
}

const json& as_arr(const json& v, const std::string& path) {
    if (!v.is_array()) throw ParseError(path + ": expected an array");
    return v;
}

Vec3 as_vec3(const json& v, const std::string& path) {
    const json& a = as_arr(v, path);
    if (a.size() != 3) throw ParseError(path + ": expected 3 components");
    return {as_f64(a[0], path), as_f64(a[1], path), as_f64(a[2], path)};
}

Pixel as_pixel(const json& v, const std::string& path) {
    const json& a = as_arr(v, path);
    if (a.size() != 2) throw ParseError(path + ": expected 2 components");
    return {as_f64(a[0], path), as_f64(a[1], path)};
}

std::vector<std::int32_t> as_int_list(const json& v, const std::string& path) {
    const json& a = as_arr(v, path);
    std::vector<std::int32_t> out;
    out.reserve(a.size());
    for (const json& e : a) out.push_back(as_i32(e, path));
    return out;
}

std::vector<Vec3> as_vec3_list(const json& v, const std::string& path) {
    const json& a = as_arr(v, path);
    std::vector<Vec3> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(as_vec3(a[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

GarmentCategory as_garment(const json& v, const std::string& path) {
    std::string s = as_str(v, path);
    auto g = garment_from_string(s);
    if (!g) throw ParseError(path + ": unknown garment category '" + s + "'");
    return *g;
}

json parse_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("invalid JSON");
    return doc;
}

}  // namespace

SequenceRecord parse_sequence(const std::string& text) {
    json doc = parse_json(text);
    SequenceRecord rec;
    rec.sequence_id = as_str(need(doc, "sequence_id", "$"), "$.sequence_id");
    rec.garment_category = as_garment(need(doc, "garment_category", "$"), "$.garment_category");

    const json& faces = as_arr(need(doc, "faces", "$"), "$.faces");
    rec.faces.reserve(faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const std::string path = "$.faces[" + std::to_string(i) + "]";
        const json& f = as_arr(faces[i], path);
        if (f.size() != 3) throw ParseError(path + ": expected 3 vertex indices");
        rec.faces.push_back({as_i32(f[0], path), as_i32(f[1], path), as_i32(f[2], path)});
    }

    rec.nocs_vertices = as_vec3_list(need(doc, "nocs_vertices", "$"), "$.nocs_vertices");

    const json& frames = as_arr(need(doc, "frames", "$"), "$.frames");
    rec.frames.reserve(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const std::string path = "$.frames[" + std::to_string(i) + "]";
        const json& f = frames[i];
        FrameRecord fr;
        fr.t = as_i64(need(f, "t", path), path + ".t");
        fr.cloth_vertices =
            as_vec3_list(need(f, "cloth_vertices", path), path + ".cloth_vertices");
        fr.left_grip_vertex_ids =
            as_int_list(need(f, "left_grip_vertex_ids", path), path + ".left_grip_vertex_ids");
        fr.right_grip_vertex_ids = as_int_list(need(f, "right_grip_vertex_ids", path),
                                               path + ".right_grip_vertex_ids");
        rec.frames.push_back(std::move(fr));
    }
    return rec;
}

namespace {

std::optional<HandAnnotation> parse_hand(const json& v, const std::string& path) {
    if (v.is_null()) return std::nullopt;
    HandAnnotation h;
    h.start_frame = as_i64(need(v, "start_frame", path), path + ".start_frame");
    h.end_frame = as_i64(need(v, "end_frame", path), path + ".end_frame");
    h.pick_vertex_ids =
        as_int_list(need(v, "pick_vertex_ids", path), path + ".pick_vertex_ids");
    h.place_vertex_ids =
        as_int_list(need(v, "place_vertex_ids", path), path + ".place_vertex_ids");
    h.pick_point = as_vec3(need(v, "pick_point", path), path + ".pick_point");
    h.place_point = as_vec3(need(v, "place_point", path), path + ".place_point");
    const json& pp = as_arr(need(v, "pick_pixels", path), path + ".pick_pixels");
    for (const json& e : pp) h.pick_pixels.push_back(as_pixel(e, path + ".pick_pixels"));
    const json& qq = as_arr(need(v, "place_pixels", path), path + ".place_pixels");
    for (const json& e : qq) h.place_pixels.push_back(as_pixel(e, path + ".place_pixels"));
    return h;
}

SemanticLabel parse_label(const json& v, const std::string& path) {
    SemanticLabel label;
    const json& vert = need(v, "vertical", path);
    if (!vert.is_null()) {
        std::string s = as_str(vert, path + ".vertical");
        if (s == "top") label.vertical = Vertical::Top;
        else if (s == "bottom") label.vertical = Vertical::Bottom;
        else throw ParseError(path + ".vertical: unknown value '" + s + "'");
    }
    const json& horiz = need(v, "horizontal", path);
    if (!horiz.is_null()) {
        std::string s = as_str(horiz, path + ".horizontal");
        if (s == "left") label.horizontal = Horizontal::Left;
        else if (s == "right") label.horizontal = Horizontal::Right;
        else throw ParseError(path + ".horizontal: unknown value '" + s + "'");
    }
    const json& sleeve = need(v, "sleeve", path);
    if (!sleeve.is_boolean()) throw ParseError(path + ".sleeve: expected a boolean");
    label.sleeve = sleeve.get<bool>();
    return label;
}

}  // namespace

AnnotationRecord parse_annotation(const std::string& text) {
    json doc = parse_json(text);
    AnnotationRecord rec;
    rec.sequence_id = as_str(need(doc, "sequence_id", "$"), "$.sequence_id");
    rec.garment_category = as_garment(need(doc, "garment_category", "$"), "$.garment_category");

    const json& cam = need(doc, "camera", "$");
    rec.camera.position = as_vec3(need(cam, "position", "$.camera"), "$.camera.position");
    rec.camera.look_at = as_vec3(need(cam, "look_at", "$.camera"), "$.camera.look_at");
    rec.camera.up = as_vec3(need(cam, "up", "$.camera"), "$.camera.up");
    rec.camera.vertical_fov_deg =
        as_f64(need(cam, "vertical_fov_deg", "$.camera"), "$.camera.vertical_fov_deg");
    rec.camera.height = as_i32(need(cam, "height", "$.camera"), "$.camera.height");
    rec.camera.width = as_i32(need(cam, "width", "$.camera"), "$.camera.width");

    const json& actions = as_arr(need(doc, "actions", "$"), "$.actions");
    rec.actions.reserve(actions.size());
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const std::string path = "$.actions[" + std::to_string(i) + "]";
        const json& a = actions[i];
        ActionAnnotation act;

        std::string usage = as_str(need(a, "arm_usage", path), path + ".arm_usage");
        auto u = arm_usage_from_string(usage);
        if (!u) throw ParseError(path + ".arm_usage: unknown value '" + usage + "'");
        act.arm_usage = *u;

        act.left = parse_hand(need(a, "left", path), path + ".left");
        act.right = parse_hand(need(a, "right", path), path + ".right");
        act.pick_label = parse_label(need(a, "pick_label", path), path + ".pick_label");
        act.place_label = parse_label(need(a, "place_label", path), path + ".place_label");

        std::string kind = as_str(need(a, "kind", path), path + ".kind");
        auto k = action_kind_from_string(kind);
        if (!k) throw ParseError(path + ".kind: unknown value '" + kind + "'");
        act.kind = *k;

        act.template_index = as_i32(need(a, "template_index", path), path + ".template_index");
        const json& arm = need(a, "single_arm", path);
        if (!arm.is_null()) {
            std::string s = as_str(arm, path + ".single_arm");
            if (s == "left") act.single_arm = Hand::Left;
            else if (s == "right") act.single_arm = Hand::Right;
            else throw ParseError(path + ".single_arm: unknown value '" + s + "'");
        }
        act.instruction = as_str(need(a, "instruction", path), path + ".instruction");
        rec.actions.push_back(std::move(act));
    }
    return rec;
}

// --- files ------------------------------------------------------------------

void save_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write file: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw FormatError("cannot write file: " + path.string());
}

std::string load_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SequenceRecord load_sequence(const std::filesystem::path& path) {
    SequenceRecord rec = parse_sequence(load_text(path));
    validate_sequence(rec);
    return rec;
}

AnnotationRecord load_annotation(const std::filesystem::path& path) {
    return parse_annotation(load_text(path));
}

// --- heatmap payloads -------------------------------------------------------

namespace {

std::filesystem::path payload_path(const std::filesystem::path& header_path) {
    std::filesystem::path bin = header_path;
    if (bin.extension() == ".json") bin.replace_extension(".bin");
    else bin += ".bin";
    return bin;
}

void write_image(const std::filesystem::path& header_path, int height, int width,
                 const std::vector<double>& values) {
    const std::filesystem::path bin = payload_path(header_path);

    std::string header = "{\n";
    header += "  \"height\": " + std::to_string(height) + ",\n";
    header += "  \"width\": " + std::to_string(width) + ",\n";
    header += "  \"dtype\": \"f32le\",\n";
    header += "  \"data\": " + str(bin.filename().string()) + "\n";
    header += "}\n";
    save_text(header_path, header);

    std::string bytes;
    bytes.resize(values.size() * 4);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const float f = static_cast<float>(values[i]);
        std::uint32_t u;
        std::memcpy(&u, &f, 4);
        bytes[4 * i + 0] = static_cast<char>(u & 0xff);
        bytes[4 * i + 1] = static_cast<char>((u >> 8) & 0xff);
        bytes[4 * i + 2] = static_cast<char>((u >> 16) & 0xff);
        bytes[4 * i + 3] = static_cast<char>((u >> 24) & 0xff);
    }
    save_text(bin, bytes);
}

void read_image(const std::filesystem::path& header_path, int& height, int& width,
                std::vector<double>& values) {
    json doc = parse_json(load_text(header_path));
    height = as_i32(need(doc, "height", "$"), "$.height");
    width = as_i32(need(doc, "width", "$"), "$.width");
    if (height <= 0 || width <= 0)
        throw FormatError("image header has non-positive dimensions");
    std::string dtype = as_str(need(doc, "dtype", "$"), "$.dtype");
    if (dtype != "f32le") throw FormatError("unsupported dtype '" + dtype + "'");
    std::string name = as_str(need(doc, "data", "$"), "$.data");

    const std::string bytes = load_text(header_path.parent_path() / name);
    const std::size_t expected =
        static_cast<std::size_t>(height) * static_cast<std::size_t>(width) * 4;
    if (bytes.size() != expected)
        throw FormatError("payload size mismatch for " + name + ": expected " +
                          std::to_string(expected) + " bytes, got " +
                          std::to_string(bytes.size()));

    values.resize(static_cast<std::size_t>(height) * width);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint32_t u = (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[4 * i + 3])) << 24) |
                          (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[4 * i + 2])) << 16) |
                          (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[4 * i + 1])) << 8) |
                          static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[4 * i]));
        float f;
        std::memcpy(&f, &u, 4);
        values[i] = f;
    }
}

}  // namespace

void write_heatmap(const Heatmap& map, const std::filesystem::path& header_path) {
    write_image(header_path, map.height, map.width, map.values);
}

Heatmap read_heatmap(const std::filesystem::path& header_path) {
    Heatmap map;
    read_image(header_path, map.height, map.width, map.values);
    return map;
}

void write_mask(const PixelMask& mask, const std::filesystem::path& header_path) {
    std::vector<double> values(mask.values.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = mask.values[i] ? 1.0 : 0.0;
    write_image(header_path, mask.height, mask.width, values);
}

PixelMask read_mask(const std::filesystem::path& header_path) {
    int height = 0, width = 0;
    std::vector<double> values;
    read_image(header_path, height, width, values);
    PixelMask mask;
    mask.height = height;
    mask.width = width;
    mask.values.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        mask.values[i] = values[i] > 0.5 ? 1 : 0;
    return mask;
}

}  // namespace bifold
