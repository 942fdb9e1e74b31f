#include "impulse/detectors.hpp"

#include <cmath>
#include <sstream>

#include "impulse/parallel.hpp"

namespace impulse {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0)) throw ConfigError("alpha", "alpha must be non-negative");
}

void check_peer(double d, int k, const std::string& d_field, const std::string& k_field) {
    if (!(d >= 0.0 && d <= 1.0)) throw ConfigError(d_field, d_field + " must lie in [0, 1]");
    if (k < 0 || k > kWindowSize - 1) throw ConfigError(k_field, k_field + " must lie in [0, 8]");
}

void check_byte(int v, const std::string& field) {
    if (v < 0 || v > 255) throw ConfigError(field, field + " must lie in [0, 255]");
}

/// Runs `stat_fn(window)` at every pixel and thresholds with `flag_fn(stat)`.
template <class StatFn, class FlagFn>
DetectionOutcome per_pixel(const ColorImage& img, StatFn stat_fn, FlagFn flag_fn) {
    DetectionOutcome out{BinaryMask(img.width(), img.height()), StatMap(img.width(), img.height())};
    StatMap& stat = *out.per_pixel_stat;
    parallel_rows(img.height(), [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            for (int c = 0; c < img.width(); ++c) {
                const double s = stat_fn(window_at(img, r, c));
                stat(r, c) = s;
                out.mask(r, c) = flag_fn(s) ? 1 : 0;
            }
        }
    });
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

void validate(const DetectorConfig& cfg) {
    std::visit(
        [](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Dm1Config> || std::is_same_v<T, Dm2Config>) {
                check_alpha(c.alpha);
            } else if constexpr (std::is_same_v<T, Dm3Config>) {
                check_peer(c.d, c.k, "d", "k");
            } else if constexpr (std::is_same_v<T, Dm4Config>) {
                if (c.schedule.empty()) throw ConfigError("schedule", "schedule must not be empty");
                for (const auto& step : c.schedule) check_peer(step.d, step.k, "schedule", "schedule");
            } else {
                check_byte(c.pset, "pset");
                check_byte(c.mset, "mset");
                check_byte(c.level, "level");
                for (const auto& o : c.level_override) {
                    if (o) check_byte(*o, "level");
                }
            }
        },
        cfg);
}

std::string detector_name(const DetectorConfig& cfg) {
    static constexpr const char* kNames[] = {"dm1", "dm2", "dm3", "dm4", "dm5"};
    return kNames[cfg.index()];
}

DetectorConfig default_detector(const std::string& name) {
    if (name == "dm1") return Dm1Config{};
    if (name == "dm2") return Dm2Config{};
    if (name == "dm3") return Dm3Config{};
    if (name == "dm4") return Dm4Config{};
    if (name == "dm5") return Dm5Config{};
    throw ConfigError("detector", "unknown detector '" + name + "' (expected dm1..dm5)");
}

std::string describe_params(const DetectorConfig& cfg) {
    return std::visit(
        [](const auto& c) -> std::string {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Dm1Config> || std::is_same_v<T, Dm2Config>) {
                return "alpha=" + format_double(c.alpha) + ";weighting=" + c.weighting.name();
            } else if constexpr (std::is_same_v<T, Dm3Config>) {
                return "d=" + format_double(c.d) + ";k=" + std::to_string(c.k);
            } else if constexpr (std::is_same_v<T, Dm4Config>) {
                std::string s = "schedule=";
                for (std::size_t i = 0; i < c.schedule.size(); ++i) {
                    if (i) s += ',';
                    s += format_double(c.schedule[i].d) + ":" + std::to_string(c.schedule[i].k);
                }
                return s;
            } else {
                std::string s = "pset=" + std::to_string(c.pset) + ";mset=" + std::to_string(c.mset) +
                                ";level=" + std::to_string(c.level) + ";selem=" + c.selem.to_string();
                for (std::size_t i = 0; i < c.level_override.size(); ++i) {
                    if (c.level_override[i]) {
                        s += ";level_m" + std::to_string(i + 1) + "=" + std::to_string(*c.level_override[i]);
                    }
                }
                return s;
            }
        },
        cfg);
}

DetectionOutcome detect_dm1(const ColorImage& img, const Dm1Config& cfg) {
    check_alpha(cfg.alpha);
    return per_pixel(
        img,
        [&](const Window& w) {
            const AggregateScores s = rank_weighted_scores(w, cfg.weighting);
            return s[0] - s[argmin_index(s)];
        },
        [&](double stat) { return stat > cfg.alpha; });
}

DetectionOutcome detect_dm2(const ColorImage& img, const Dm2Config& cfg) {
    check_alpha(cfg.alpha);
    return per_pixel(
        img,
        [&](const Window& w) {
            const AggregateScores s = rank_weighted_scores(w, cfg.weighting);
            return s[argmin_index(s)];
        },
        [&](double stat) { return stat > cfg.alpha; });
}

int peer_group_size(const Window& w, int center_index, double d) noexcept {
    int m = 0;
    const Pixel center = w.values[center_index];
    for (int j = 0; j < kWindowSize; ++j) {
        if (j == center_index) continue;
        if (l2_distance(w.values[j], center) / kMaxPixelDistance < d) ++m;
    }
    return m;
}

DetectionOutcome detect_dm3(const ColorImage& img, const Dm3Config& cfg) {
    check_peer(cfg.d, cfg.k, "d", "k");
    return per_pixel(
        img, [&](const Window& w) { return static_cast<double>(peer_group_size(w, 0, cfg.d)); },
        [&](double m) { return m <= cfg.k; });
}

DetectionOutcome detect_dm4(const ColorImage& img, const Dm4Config& cfg) {
    validate(cfg);
    DetectionOutcome out{BinaryMask(img.width(), img.height()), StatMap(img.width(), img.height())};
    StatMap& first_pass = *out.per_pixel_stat;
    ColorImage filtered = img;
    for (std::size_t t = 0; t < cfg.schedule.size(); ++t) {
        if (t > 0) filtered = vmf_replace(img, out.mask);
        const BinaryMask pass =
            detect_dm3(filtered, Dm3Config{cfg.schedule[t].d, cfg.schedule[t].k}).mask;
        auto pv = pass.values();
        auto mv = out.mask.values();
        auto sv = first_pass.values();
        for (std::size_t i = 0; i < mv.size(); ++i) {
            if (pv[i] && !mv[i]) {
                mv[i] = 1;
                sv[i] = static_cast<double>(t + 1);
            }
        }
    }
    return out;
}

std::array<BinaryMask, 5> dm5_submasks(const ColorImage& img, const Dm5Config& cfg) {
    validate(cfg);
    const int w = img.width();
    const int h = img.height();
    const StructuringElement& se = cfg.selem;

    BinaryMask m1(w, h);
    BinaryMask bright(w, h);  // union of BW(x^c - pset)
    BinaryMask lifted(w, h);  // union of BW(x^c + mset)
    for (int ch = 0; ch < 3; ++ch) {
        const GrayImage x = extract_channel(img, ch);
        const GrayImage minus_mset = channel_shift(x, -cfg.mset);
        const GrayImage minus_pset = channel_shift(x, -cfg.pset);
        m1 = mask_union(m1, threshold_bw(gray_bottom_hat(minus_mset, se), cfg.level_for(0)));
        m1 = mask_union(m1, threshold_bw(gray_bottom_hat(minus_pset, se), cfg.level_for(0)));
        bright = mask_union(bright, threshold_bw(minus_pset, cfg.level_for(1)));
        lifted = mask_union(lifted, threshold_bw(channel_shift(x, cfg.mset), cfg.level_for(2)));
    }
    BinaryMask m2 = remove_interior(bright);
    BinaryMask m3 = remove_interior(lifted);
    BinaryMask m4 = bottom_hat(threshold_bw(rgb_to_gray(img), cfg.level_for(3)), se);
    BinaryMask m5 =
        bottom_hat(threshold_bw(rgb_to_gray(channel_shift(img, -cfg.pset)), cfg.level_for(4)), se);
    return {std::move(m1), std::move(m2), std::move(m3), std::move(m4), std::move(m5)};
}

DetectionOutcome detect_dm5(const ColorImage& img, const Dm5Config& cfg) {
    const auto subs = dm5_submasks(img, cfg);
    DetectionOutcome out{BinaryMask(img.width(), img.height()), StatMap(img.width(), img.height())};
    auto mv = out.mask.values();
    auto sv = out.per_pixel_stat->values();
    for (const auto& sub : subs) {
        auto bv = sub.values();
        for (std::size_t i = 0; i < mv.size(); ++i) {
            if (bv[i]) {
                mv[i] = 1;
                sv[i] += 1.0;
            }
        }
    }
    return out;
}

DetectionOutcome detect(const ColorImage& img, const DetectorConfig& cfg) {
    return std::visit(
        [&](const auto& c) -> DetectionOutcome {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Dm1Config>) return detect_dm1(img, c);
            else if constexpr (std::is_same_v<T, Dm2Config>) return detect_dm2(img, c);
            else if constexpr (std::is_same_v<T, Dm3Config>) return detect_dm3(img, c);
            else if constexpr (std::is_same_v<T, Dm4Config>) return detect_dm4(img, c);
            else return detect_dm5(img, c);
        },
        cfg);
}

}  // namespace impulse
