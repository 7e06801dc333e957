#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bifold/geometry.hpp"
#include "bifold/image.hpp"
#include "bifold/rng.hpp"

namespace bifold {

struct CameraPose {
    Vec3 position;
    Vec3 look_at;
    Vec3 up;  // world-up projected orthogonal to the view axis
    double vertical_fov_deg = 45.0;
    int height = 384, width = 384;
};

// Sampling volume around the look-at point. Elevation is measured from the
// horizontal plane; world up is +Z.
struct CameraVolume {
    double elevation_min_deg = 45.0, elevation_max_deg = 90.0;
    double radius_min = 1.8, radius_max = 2.2;
    double vertical_fov_deg = 45.0;
    int height = 384, width = 384;
    int max_resamples = 100;
};

// Draws elevation, azimuth, radius (in that order) uniformly from the volume.
CameraPose sample_camera(Rng& rng, const Vec3& center, const CameraVolume& vol = {});

// Pinhole projection; the look-at point lands on the image center
// ((H-1)/2, (W-1)/2). Throws ValidationError for points at or behind the
// camera plane.
Pixel project(const Vec3& point, const CameraPose& cam);

// Samples cameras until every point projects inside [0, H-1] x [0, W-1];
// returns the first accepted camera and the projected pixels. Throws
// NoValidCameraError once the resample budget is spent.
std::pair<CameraPose, std::vector<Pixel>> annotate_pixels(std::span<const Vec3> points,
                                                          Rng& rng, const Vec3& center,
                                                          const CameraVolume& vol = {});

// 0 when the rounded pixel is inside the mask, otherwise the Euclidean
// distance to the closest mask pixel.
double mask_distance(const Pixel& pixel, const PixelMask& mask);

std::int64_t mask_pixel_count(const PixelMask& mask);

}  // namespace bifold
