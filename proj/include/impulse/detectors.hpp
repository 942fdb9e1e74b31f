#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "impulse/image.hpp"
#include "impulse/morphology.hpp"
#include "impulse/vector_filters.hpp"

namespace impulse {

/// Rank-weighted switching test: flag when Delta_center - min Delta > alpha.
struct Dm1Config {
    double alpha = 20.0;  // ROC-selected on the bundled image, CI1/CT1 p=0.1
    RankWeighting weighting{WeightingKind::Reciprocal};
    friend bool operator==(const Dm1Config&, const Dm1Config&) = default;
};

/// Flag when min Delta > alpha.
struct Dm2Config {
    double alpha = 60.0;
    RankWeighting weighting{WeightingKind::Reciprocal};
    friend bool operator==(const Dm2Config&, const Dm2Config&) = default;
};

/// Peer group test: flag when the center has at most k neighbors within
/// normalized distance d.
struct Dm3Config {
    double d = 0.25;
    int k = 3;
    friend bool operator==(const Dm3Config&, const Dm3Config&) = default;
};

struct PeerGroupStep {
    double d;
    int k;
    friend bool operator==(const PeerGroupStep&, const PeerGroupStep&) = default;
};

/// Iterated peer group test. The first step is the preliminary detection;
/// steps after it are a configurable refinement schedule.
struct Dm4Config {
    std::vector<PeerGroupStep> schedule{{0.25, 3}, {0.25, 2}, {0.15, 2}};
    friend bool operator==(const Dm4Config&, const Dm4Config&) = default;
};

/// Morphological detector. `level_override[i]` replaces `level` for
/// sub-mask M(i+1) when set.
struct Dm5Config {
    int pset = 200;
    int mset = 50;
    int level = 40;
    StructuringElement selem = StructuringElement::square(3);
    std::array<std::optional<int>, 5> level_override{};

    int level_for(int submask) const noexcept { return level_override[submask].value_or(level); }
    friend bool operator==(const Dm5Config&, const Dm5Config&) = default;
};

using DetectorConfig = std::variant<Dm1Config, Dm2Config, Dm3Config, Dm4Config, Dm5Config>;

/// Throws ConfigError naming the offending field.
void validate(const DetectorConfig& cfg);

/// "dm1".."dm5".
std::string detector_name(const DetectorConfig& cfg);
/// Default-parameter config for "dm1".."dm5".
DetectorConfig default_detector(const std::string& name);
/// Semicolon-separated key=value parameter list, e.g. "pset=200;mset=50;level=40".
std::string describe_params(const DetectorConfig& cfg);

struct DetectionOutcome {
    /// 1 = pixel declared corrupted.
    BinaryMask mask;
    /// The raw statistic the decision was made on.
    std::optional<StatMap> per_pixel_stat;
};

DetectionOutcome detect_dm1(const ColorImage& img, const Dm1Config& cfg);
DetectionOutcome detect_dm2(const ColorImage& img, const Dm2Config& cfg);
DetectionOutcome detect_dm3(const ColorImage& img, const Dm3Config& cfg);
DetectionOutcome detect_dm4(const ColorImage& img, const Dm4Config& cfg);
DetectionOutcome detect_dm5(const ColorImage& img, const Dm5Config& cfg);

DetectionOutcome detect(const ColorImage& img, const DetectorConfig& cfg);

/// Number of window pixels other than `center_index` whose distance to it,
/// normalized by 255*sqrt(3), is strictly below d.
int peer_group_size(const Window& w, int center_index, double d) noexcept;

/// The five morphological sub-masks M1..M5; detect_dm5 returns their union.
std::array<BinaryMask, 5> dm5_submasks(const ColorImage& img, const Dm5Config& cfg);

}  // namespace impulse
