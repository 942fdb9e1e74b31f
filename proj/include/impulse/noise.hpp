#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "impulse/image.hpp"

namespace impulse {

/// CI: channels corrupted independently. CT: all three channels together.
enum class NoiseFamily { CI, CT };

struct NoiseSpec {
    NoiseFamily family = NoiseFamily::CI;
    /// Impulse value distribution: 1 = {0,255}, 2 = uniform [0,255],
    /// 3 = uniform over [0,55] u [200,255].
    int variant = 1;
    double p = 0.1;
    std::uint64_t seed = 0;

    /// Throws ConfigError unless 0 < p < 1 and variant is 1, 2 or 3.
    void validate() const;
    /// e.g. "CI1 p=0.1 seed=7"
    std::string describe() const;
};

NoiseFamily parse_noise_family(const std::string& name);
std::string to_string(NoiseFamily family);

/// The single random stream used by all noise generation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Standard distributions are implementation-defined, so the
/// mappings to integers and reals below are done by hand to keep golden
/// outputs identical across standard libraries.
class NoiseRng {
public:
    explicit NoiseRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [0, n), n > 0, by rejection.
    std::uint64_t below(std::uint64_t n);
    /// Uniform real in [0, 1) with 53 random bits.
    double unit();

private:
    std::mt19937_64 engine_;
};

/// One impulse value for the given variant.
std::uint8_t draw_impulse(int variant, NoiseRng& rng);

struct CorruptionResult {
    ColorImage noisy;
    /// 1 where at least one channel was replaced.
    BinaryMask pixel_mask;
    /// Per-channel replacement flags, r/g/b.
    std::array<BinaryMask, 3> channel_mask;
};

/// Corrupts a copy of `img`. Traversal is row-major, channels in r,g,b
/// order, from one NoiseRng seeded with spec.seed. A replaced channel may
/// draw the value it already held; it is still marked in the masks.
CorruptionResult corrupt(const ColorImage& img, const NoiseSpec& spec);

}  // namespace impulse
