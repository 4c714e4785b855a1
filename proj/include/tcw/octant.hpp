#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcw {

/// Index of an open octant of R^d.  Bit i set means coordinate i is negative.
/// Encodes to an integer in [0, 2^d) with bit 0 = coordinate 0 (little-endian).
struct OctantIndex {
    std::vector<std::uint8_t> bits;

    OctantIndex() = default;
    OctantIndex(std::size_t dim, std::uint32_t code) : bits(dim) {
        for (std::size_t i = 0; i < dim; ++i)
            bits[i] = static_cast<std::uint8_t>((code >> i) & 1u);
    }

    [[nodiscard]] std::size_t dimension() const { return bits.size(); }

    [[nodiscard]] std::uint32_t code() const {
        std::uint32_t c = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) c |= (1u << i);
        return c;
    }

    friend bool operator==(const OctantIndex& a, const OctantIndex& b) {
        return a.bits == b.bits;
    }
};

/// Octant containing x, with zero coordinates classified as positive.
/// This tie-break is fixed: the bounding hyperplanes are Lebesgue-null for
/// the processes we sample, and a deterministic rule keeps runs reproducible.
inline OctantIndex octant_of(std::span<const double> x) {
    OctantIndex a;
    a.bits.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        a.bits[i] = x[i] < 0.0 ? 1 : 0;
    return a;
}

/// Same, returning only the integer code (hot-path variant, no allocation).
inline std::uint32_t octant_code_of(std::span<const double> x) {
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < 0.0) c |= (1u << i);
    return c;
}

inline bool on_boundary(std::span<const double> x) {
    for (double xi : x)
        if (xi == 0.0) return true;
    return false;
}

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_dimension(std::size_t expected, std::size_t got,
                              const char* what) {
    if (expected != got)
        throw config_error(std::string(what) + ": dimension mismatch, expected " +
                           std::to_string(expected) + ", got " + std::to_string(got));
}

}  // namespace tcw
