#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bifold {

// mt19937_64 with an explicit 53-bit mapping to doubles, so streams do not
// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1).
    double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(u01() * static_cast<double>(n));
    }

private:
    std::mt19937_64 engine_;
};

// FNV-1a, used to derive per-sequence seeds from the global seed.
inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace bifold
