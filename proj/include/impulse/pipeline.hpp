#pragma once

#include "impulse/detectors.hpp"
#include "impulse/image.hpp"

namespace impulse {

enum class Replacement {
    /// Vector median over the full 3x3 window.
    VmfFullWindow,
    /// Channel-wise mean over the window pixels the detector left unflagged.
    AmfCleanPixels,
};

Replacement parse_replacement(const std::string& name);
std::string to_string(Replacement r);

struct SwitchingConfig {
    DetectorConfig detector = Dm5Config{};
    Replacement replacement = Replacement::VmfFullWindow;
    int passes = 1;
};

struct DenoiseResult {
    ColorImage restored;
    /// Union of the detector masks over all passes.
    BinaryMask mask;
};

/// Switching filter: detect, then replace flagged pixels and keep the rest.
/// Each pass reads windows from the previous pass's output, never from
/// partially updated pixels.
DenoiseResult denoise(const ColorImage& img, const SwitchingConfig& cfg);

/// Non-switching baseline: vmf at every pixel.
ColorImage plain_vmf_image(const ColorImage& img);

}  // namespace impulse
