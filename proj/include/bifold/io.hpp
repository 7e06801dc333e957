#pragma once

#include <filesystem>
#include <string>

#include "bifold/annotation.hpp"
#include "bifold/image.hpp"
#include "bifold/records.hpp"

namespace bifold {

// Fixed-width float formatting (6 significant digits) used by every JSON
// emitter, so identical data always serializes to identical bytes.
std::string format_g6(double v);

std::string write_sequence(const SequenceRecord& rec);
SequenceRecord parse_sequence(const std::string& text);
SequenceRecord load_sequence(const std::filesystem::path& path);

std::string write_annotation(const AnnotationRecord& rec);
AnnotationRecord parse_annotation(const std::string& text);
AnnotationRecord load_annotation(const std::filesystem::path& path);

void save_text(const std::filesystem::path& path, const std::string& text);
std::string load_text(const std::filesystem::path& path);

// Heatmaps are stored as a JSON header next to a flat little-endian float32
// payload. Writing "x.json" produces payload "x.bin"; any other extension
// gets ".bin" appended.
void write_heatmap(const Heatmap& map, const std::filesystem::path& header_path);
Heatmap read_heatmap(const std::filesystem::path& header_path);

// Masks reuse the heatmap container: values above 0.5 are inside.
void write_mask(const PixelMask& mask, const std::filesystem::path& header_path);
PixelMask read_mask(const std::filesystem::path& header_path);

}  // namespace bifold
