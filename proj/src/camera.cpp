#include "bifold/camera.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bifold/errors.hpp"

namespace bifold {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr Vec3 kWorldUp{0.0, 0.0, 1.0};

void validate_volume(const CameraVolume& vol) {
    if (vol.height <= 0 || vol.width <= 0)
        throw ValidationError("image size must be positive");
    if (vol.radius_min <= 0.0 || vol.radius_max < vol.radius_min)
        throw ValidationError("camera radius range is invalid");
    if (vol.elevation_max_deg < vol.elevation_min_deg)
        throw ValidationError("camera elevation range is invalid");
    if (vol.vertical_fov_deg <= 0.0 || vol.vertical_fov_deg >= 180.0)
        throw ValidationError("vertical fov must be in (0, 180)");
    if (vol.max_resamples < 1)
        throw ValidationError("max_resamples must be at least 1");
}

}  // namespace

CameraPose sample_camera(Rng& rng, const Vec3& center, const CameraVolume& vol) {
    validate_volume(vol);
    const double elevation =
        rng.uniform(vol.elevation_min_deg, vol.elevation_max_deg) * kDegToRad;
    const double azimuth = rng.uniform(0.0, 360.0) * kDegToRad;
    const double radius = rng.uniform(vol.radius_min, vol.radius_max);

    const Vec3 offset{radius * std::cos(elevation) * std::cos(azimuth),
                      radius * std::cos(elevation) * std::sin(azimuth),
                      radius * std::sin(elevation)};

    CameraPose cam;
    cam.position = center + offset;
    cam.look_at = center;
    cam.vertical_fov_deg = vol.vertical_fov_deg;
    cam.height = vol.height;
    cam.width = vol.width;

    // World-up projected orthogonal to the view axis; straight-down views
    // fall back to +Y.
    const Vec3 forward = (cam.look_at - cam.position).normalized();
    const Vec3 projected = kWorldUp - forward * kWorldUp.dot(forward);
    const double len = projected.norm();
    cam.up = len < 1e-9 ? Vec3{0.0, 1.0, 0.0} : projected / len;
    return cam;
}

Pixel project(const Vec3& point, const CameraPose& cam) {
    if (cam.height <= 0 || cam.width <= 0)
        throw ValidationError("image size must be positive");
    const Vec3 forward = (cam.look_at - cam.position).normalized();
    const Vec3 right = forward.cross(cam.up).normalized();
    const Vec3 up = right.cross(forward);

    const Vec3 d = point - cam.position;
    const double depth = d.dot(forward);
    if (depth <= 1e-9)
        throw ValidationError("point at or behind the camera plane");

    const double tan_half = std::tan(0.5 * cam.vertical_fov_deg * kDegToRad);
    const double aspect = static_cast<double>(cam.width) / cam.height;
    const double xn = d.dot(right) / (depth * tan_half * aspect);
    const double yn = d.dot(up) / (depth * tan_half);

    Pixel px;
    px.col = (cam.width - 1) * 0.5 + 0.5 * cam.width * xn;
    px.row = (cam.height - 1) * 0.5 - 0.5 * cam.height * yn;
    return px;
}

std::pair<CameraPose, std::vector<Pixel>> annotate_pixels(std::span<const Vec3> points,
                                                          Rng& rng, const Vec3& center,
                                                          const CameraVolume& vol) {
    if (points.empty()) throw ValidationError("annotate_pixels needs at least one point");
    validate_volume(vol);

    for (int attempt = 0; attempt < vol.max_resamples; ++attempt) {
        const CameraPose cam = sample_camera(rng, center, vol);
        std::vector<Pixel> pixels;
        pixels.reserve(points.size());
        bool ok = true;
        for (const Vec3& p : points) {
            Pixel px;
            try {
                px = project(p, cam);
            } catch (const ValidationError&) {
                ok = false;
                break;
            }
            if (px.row < 0.0 || px.row > cam.height - 1 || px.col < 0.0 ||
                px.col > cam.width - 1) {
                ok = false;
                break;
            }
            pixels.push_back(px);
        }
        if (ok) return {cam, std::move(pixels)};
    }
    throw NoValidCameraError("no camera kept all points in view after " +
                             std::to_string(vol.max_resamples) + " samples");
}

double mask_distance(const Pixel& pixel, const PixelMask& mask) {
    if (mask.height <= 0 || mask.width <= 0 ||
        mask.values.size() != static_cast<std::size_t>(mask.height) * mask.width)
        throw ValidationError("mask dimensions do not match its buffer");
    if (pixel.row < 0.0 || pixel.row > mask.height - 1 || pixel.col < 0.0 ||
        pixel.col > mask.width - 1)
        throw ValidationError("pixel outside the image in mask_distance");

    const int r0 = static_cast<int>(std::llround(pixel.row));
    const int c0 = static_cast<int>(std::llround(pixel.col));
    if (mask.at(r0, c0)) return 0.0;

    if (mask_pixel_count(mask) == 0)
        throw ValidationError("mask has no pixels set in mask_distance");

    double best = std::numeric_limits<double>::infinity();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : best)
#endif
    for (int r = 0; r < mask.height; ++r) {
        double row_best = std::numeric_limits<double>::infinity();
        for (int c = 0; c < mask.width; ++c) {
            if (!mask.at(r, c)) continue;
            const double dr = pixel.row - r;
            const double dc = pixel.col - c;
            row_best = std::min(row_best, dr * dr + dc * dc);
        }
        best = std::min(best, row_best);
    }
    return std::sqrt(best);
}

std::int64_t mask_pixel_count(const PixelMask& mask) {
    if (mask.values.size() != static_cast<std::size_t>(mask.height) * mask.width)
        throw ValidationError("mask dimensions do not match its buffer");
    std::int64_t count = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : count)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(mask.values.size()); ++i)
        count += mask.values[static_cast<std::size_t>(i)] != 0 ? 1 : 0;
    return count;
}

}  // namespace bifold
