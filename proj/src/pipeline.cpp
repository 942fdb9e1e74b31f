#include "impulse/pipeline.hpp"

#include "impulse/parallel.hpp"
#include "impulse/vector_filters.hpp"

namespace impulse {

namespace {

ColorImage amf_replace(const ColorImage& img, const BinaryMask& mask) {
    ColorImage out = img;
    parallel_rows(img.height(), [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            for (int c = 0; c < img.width(); ++c) {
                if (!mask(r, c)) continue;
                std::array<bool, kWindowSize> clean{};
                for (int i = 0; i < kWindowSize; ++i) {
                    clean[i] = mask.clamped(r + kWindowOffsets[i][0], c + kWindowOffsets[i][1]) == 0;
                }
                out(r, c) = amf(window_at(img, r, c), clean);
            }
        }
    });
    return out;
}

}  // namespace

Replacement parse_replacement(const std::string& name) {
    if (name == "vmf") return Replacement::VmfFullWindow;
    if (name == "amf") return Replacement::AmfCleanPixels;
    throw ConfigError("replacement", "unknown replacement '" + name + "' (expected vmf or amf)");
}

std::string to_string(Replacement r) { return r == Replacement::VmfFullWindow ? "vmf" : "amf"; }

DenoiseResult denoise(const ColorImage& img, const SwitchingConfig& cfg) {
    if (cfg.passes < 1) throw ConfigError("passes", "passes must be at least 1");
    validate(cfg.detector);
    DenoiseResult out{img, BinaryMask(img.width(), img.height())};
    for (int pass = 0; pass < cfg.passes; ++pass) {
        const BinaryMask flagged = detect(out.restored, cfg.detector).mask;
        out.restored = cfg.replacement == Replacement::VmfFullWindow ? vmf_replace(out.restored, flagged)
                                                                     : amf_replace(out.restored, flagged);
        out.mask = mask_union(out.mask, flagged);
    }
    return out;
}

ColorImage plain_vmf_image(const ColorImage& img) { return vmf_image(img); }

}  // namespace impulse
