#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bifold {

// Real-valued image position: row 0 is the top of the image.
struct Pixel {
    double row = 0.0, col = 0.0;
    bool operator==(const Pixel&) const = default;
};

// Integer grid position.
struct PixelIndex {
    int row = 0, col = 0;
    bool operator==(const PixelIndex&) const = default;
};

struct PixelMask {
    int height = 0, width = 0;
    std::vector<std::uint8_t> values;  // row-major, nonzero = inside

    bool at(int r, int c) const {
        return values[static_cast<std::size_t>(r) * width + c] != 0;
    }
};

struct Heatmap {
    int height = 0, width = 0;
    std::vector<double> values;  // row-major, in [0, 1]

    double at(int r, int c) const {
        return values[static_cast<std::size_t>(r) * width + c];
    }
    double& at(int r, int c) {
        return values[static_cast<std::size_t>(r) * width + c];
    }
};

// Normalized heatmap: values sum to 1.
struct Distribution {
    int height = 0, width = 0;
    std::vector<double> values;
};

}  // namespace bifold
