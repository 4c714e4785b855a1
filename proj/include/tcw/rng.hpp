#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace tcw::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer (Steele/Lea/Flood via Vigna).
inline constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
    return mix(a + kGolden * (b + 1));
}

/// Counter-based random stream: word(i) is the i-th output of splitmix64
/// seeded with `key`, addressable in any order.  Streams for distinct
/// (master_seed, path_index, tag) tuples are derived by hash chaining, so a
/// path's randomness is identical no matter how many workers run or in which
/// order paths are processed.
struct Stream {
    std::uint64_t key = 0;

    static Stream derive(std::uint64_t master_seed, std::uint64_t path_index,
                         std::uint64_t tag) {
        return Stream{combine(combine(master_seed, path_index), tag)};
    }

    [[nodiscard]] std::uint64_t word(std::uint64_t i) const {
        return mix(key + (i + 1) * kGolden);
    }

    /// Uniform on (0,1), 53-bit resolution, never exactly 0 or 1.
    [[nodiscard]] double uniform(std::uint64_t i) const {
        return (static_cast<double>(word(i) >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Box-Muller pair from words (2j, 2j+1).
    void normal_pair(std::uint64_t j, double& z0, double& z1) const {
        const double u1 = uniform(2 * j);
        const double u2 = uniform(2 * j + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        z0 = r * std::cos(a);
        z1 = r * std::sin(a);
    }

    /// The g-th standard normal of the stream, random access.
    [[nodiscard]] double normal(std::uint64_t g) const {
        double z0, z1;
        normal_pair(g / 2, z0, z1);
        return (g % 2 == 0) ? z0 : z1;
    }
};

/// Sequential reader over a Stream's normals; caches the current Box-Muller
/// pair so hot loops pay one log/sqrt/sincos per two draws.
class NormalCursor {
  public:
    explicit NormalCursor(Stream s, std::uint64_t start = 0)
        : stream_(s), next_(start) {}

    double operator()() {
        const std::uint64_t pair = next_ / 2;
        if (pair != cached_) {
            stream_.normal_pair(pair, z0_, z1_);
            cached_ = pair;
        }
        const double z = (next_ % 2 == 0) ? z0_ : z1_;
        ++next_;
        return z;
    }

    [[nodiscard]] std::uint64_t position() const { return next_; }

  private:
    Stream stream_;
    std::uint64_t next_;
    std::uint64_t cached_ = ~std::uint64_t{0};
    double z0_ = 0.0, z1_ = 0.0;
};

// Stream tags; base increment streams add the refinement level.
inline constexpr std::uint64_t kTagIncrements = 0x100;
inline constexpr std::uint64_t kTagBridge = 0x200;

}  // namespace tcw::rng
