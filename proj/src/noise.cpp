#include "impulse/noise.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace impulse {

void NoiseSpec::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("p", "noise probability p must lie in (0, 1)");
    if (variant < 1 || variant > 3) throw ConfigError("variant", "noise variant must be 1, 2 or 3");
}

std::string NoiseSpec::describe() const {
    std::ostringstream os;
    os << to_string(family) << variant << " p=" << p << " seed=" << seed;
    return os.str();
}

NoiseFamily parse_noise_family(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "ci") return NoiseFamily::CI;
    if (lower == "ct") return NoiseFamily::CT;
    throw ConfigError("family", "unknown noise family '" + name + "' (expected ci or ct)");
}

std::string to_string(NoiseFamily family) { return family == NoiseFamily::CI ? "CI" : "CT"; }

std::uint64_t NoiseRng::below(std::uint64_t n) {
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double NoiseRng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint8_t draw_impulse(int variant, NoiseRng& rng) {
    switch (variant) {
        case 1:
            return (rng.next() >> 63) ? 255 : 0;
        case 2:
            return static_cast<std::uint8_t>(rng.below(256));
        case 3: {
            // 56 values in [0,55] followed by 56 values in [200,255].
            const auto idx = static_cast<int>(rng.below(112));
            return static_cast<std::uint8_t>(idx < 56 ? idx : idx + 144);
        }
        default:
            throw ConfigError("variant", "noise variant must be 1, 2 or 3");
    }
}

CorruptionResult corrupt(const ColorImage& img, const NoiseSpec& spec) {
    spec.validate();
    const int w = img.width();
    const int h = img.height();
    CorruptionResult out{img, BinaryMask(w, h), {BinaryMask(w, h), BinaryMask(w, h), BinaryMask(w, h)}};
    NoiseRng rng(spec.seed);

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            Pixel& px = out.noisy(r, c);
            if (spec.family == NoiseFamily::CI) {
                for (int ch = 0; ch < 3; ++ch) {
                    if (rng.unit() < spec.p) {
                        px[ch] = draw_impulse(spec.variant, rng);
                        out.channel_mask[ch](r, c) = 1;
                        out.pixel_mask(r, c) = 1;
                    }
                }
            } else if (rng.unit() < spec.p) {
                for (int ch = 0; ch < 3; ++ch) {
                    px[ch] = draw_impulse(spec.variant, rng);
                    out.channel_mask[ch](r, c) = 1;
                }
                out.pixel_mask(r, c) = 1;
            }
        }
    }
    return out;
}

}  // namespace impulse
