#include "impulse/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

namespace impulse {

MsePsnr mse_psnr(const ColorImage& clean, const ColorImage& restored) {
    if (!clean.same_shape(restored)) throw ShapeError("mse_psnr: image shapes differ");
    auto a = clean.values();
    auto b = restored.values();
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (int ch = 0; ch < 3; ++ch) {
            const int diff = a[i][ch] - b[i][ch];
            sum += static_cast<std::uint64_t>(diff * diff);
        }
    }
    MsePsnr out;
    out.mse = static_cast<double>(sum) / (3.0 * static_cast<double>(a.size()));
    out.psnr = psnr_from_mse(out.mse);
    return out;
}

double psnr_from_mse(double mse) noexcept {
    if (mse <= 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(255.0 / std::sqrt(mse));
}

ConfusionCounts confusion(const BinaryMask& truth, const BinaryMask& detected) {
    if (!truth.same_shape(detected)) throw ShapeError("confusion: mask shapes differ");
    ConfusionCounts c;
    auto t = truth.values();
    auto d = detected.values();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i]) {
            d[i] ? ++c.tp : ++c.fn;
        } else {
            d[i] ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

ErrorRates rates(const ConfusionCounts& c) noexcept {
    ErrorRates r;
    if (c.fp + c.tn > 0) r.fp_rate = static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
    if (c.fn + c.tp > 0) r.fn_rate = static_cast<double>(c.fn) / static_cast<double>(c.fn + c.tp);
    return r;
}

Selection parse_selection(const std::string& name) {
    if (name == "euclidean") return Selection::Euclidean;
    if (name == "sum") return Selection::Sum;
    throw ConfigError("select", "unknown selection rule '" + name + "' (expected euclidean or sum)");
}

std::string to_string(Selection s) { return s == Selection::Euclidean ? "euclidean" : "sum"; }

double selection_score(double fp_rate, double fn_rate, Selection rule) noexcept {
    return rule == Selection::Euclidean ? std::hypot(fp_rate, fn_rate) : fp_rate + fn_rate;
}

namespace {

/// Alpha-independent key for DM1/DM2 statistic caching.
std::optional<std::pair<std::size_t, WeightingKind>> alpha_sweep_key(const DetectorConfig& cfg) {
    if (const auto* c = std::get_if<Dm1Config>(&cfg)) return std::pair{cfg.index(), c->weighting.kind()};
    if (const auto* c = std::get_if<Dm2Config>(&cfg)) return std::pair{cfg.index(), c->weighting.kind()};
    return std::nullopt;
}

double alpha_of(const DetectorConfig& cfg) {
    if (const auto* c = std::get_if<Dm1Config>(&cfg)) return c->alpha;
    return std::get<Dm2Config>(cfg).alpha;
}

DetectorConfig with_zero_alpha(DetectorConfig cfg) {
    std::visit(
        [](auto& c) {
            if constexpr (requires { c.alpha; }) c.alpha = 0.0;
        },
        cfg);
    return cfg;
}

}  // namespace

RocResult roc_sweep(const CorruptionResult& corrupted, std::span<const DetectorConfig> grid, Selection rule) {
    if (grid.empty()) throw ConfigError("grid", "ROC grid must not be empty");
    for (const auto& cfg : grid) validate(cfg);

    RocResult out;
    out.rule = rule;
    out.points.reserve(grid.size());
    std::map<std::pair<std::size_t, WeightingKind>, StatMap> stat_cache;

    for (const auto& cfg : grid) {
        BinaryMask detected;
        if (auto key = alpha_sweep_key(cfg)) {
            auto it = stat_cache.find(*key);
            if (it == stat_cache.end()) {
                auto outcome = detect(corrupted.noisy, with_zero_alpha(cfg));
                it = stat_cache.emplace(*key, std::move(*outcome.per_pixel_stat)).first;
            }
            const double alpha = alpha_of(cfg);
            const StatMap& stat = it->second;
            detected = BinaryMask(stat.width(), stat.height());
            auto sv = stat.values();
            auto dv = detected.values();
            for (std::size_t i = 0; i < sv.size(); ++i) dv[i] = sv[i] > alpha ? 1 : 0;
        } else {
            detected = detect(corrupted.noisy, cfg).mask;
        }
        const ErrorRates r = rates(confusion(corrupted.pixel_mask, detected));
        out.points.push_back({cfg, r.fp_rate, r.fn_rate});
    }

    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        const double s = selection_score(out.points[i].fp_rate, out.points[i].fn_rate, rule);
        if (s < best_score) {
            best_score = s;
            out.best = i;
        }
    }
    return out;
}

RocResult roc_sweep(const ColorImage& clean, const NoiseSpec& spec, std::span<const DetectorConfig> grid,
                    Selection rule) {
    if (grid.empty()) throw ConfigError("grid", "ROC grid must not be empty");
    return roc_sweep(corrupt(clean, spec), grid, rule);
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

TimedDenoise timed_denoise(const ColorImage& img, const SwitchingConfig& cfg, int repeats) {
    if (repeats < 1) throw ConfigError("repeat", "repeat count must be at least 1");
    using clock = std::chrono::steady_clock;
    TimedDenoise out{denoise(img, cfg), 0.0, {}};
    out.samples.reserve(static_cast<std::size_t>(repeats));
    for (int i = 0; i < repeats; ++i) {
        const auto start = clock::now();
        out.result = denoise(img, cfg);
        const std::chrono::duration<double> dt = clock::now() - start;
        out.samples.push_back(dt.count());
    }
    out.elapsed_seconds = median(out.samples);
    return out;
}

ReportFormat parse_report_format(const std::string& name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw ConfigError("report", "unknown report format '" + name + "' (expected csv or json)");
}

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

nlohmann::json json_real(double v) {
    if (std::isfinite(v)) return v;
    return format_real(v);
}

nlohmann::json json_optional(const std::optional<double>& v) {
    return v ? json_real(*v) : nlohmann::json(nullptr);
}

}  // namespace

void write_quality_reports(std::ostream& os, std::span<const QualityReport> reports, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        os << "label,mse,psnr,fp_rate,fn_rate,elapsed_seconds,fsimc,sr_sim,ifs\n";
        auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
        for (const auto& r : reports) {
            os << csv_field(r.label) << ',' << format_real(r.mse) << ',' << format_real(r.psnr) << ','
               << format_real(r.fp_rate) << ',' << format_real(r.fn_rate) << ','
               << format_real(r.elapsed_seconds) << ',' << opt(r.fsimc) << ',' << opt(r.sr_sim) << ','
               << opt(r.ifs) << '\n';
        }
        return;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back({{"label", r.label},
                       {"mse", json_real(r.mse)},
                       {"psnr", json_real(r.psnr)},
                       {"fp_rate", json_real(r.fp_rate)},
                       {"fn_rate", json_real(r.fn_rate)},
                       {"elapsed_seconds", json_real(r.elapsed_seconds)},
                       {"fsimc", json_optional(r.fsimc)},
                       {"sr_sim", json_optional(r.sr_sim)},
                       {"ifs", json_optional(r.ifs)}});
    }
    os << nlohmann::json{{"reports", arr}}.dump(2) << '\n';
}

void write_roc(std::ostream& os, const RocResult& roc, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        os << "index,detector,params,fp_rate,fn_rate,score,selected\n";
        for (std::size_t i = 0; i < roc.points.size(); ++i) {
            const auto& p = roc.points[i];
            os << i << ',' << detector_name(p.params) << ',' << csv_field(describe_params(p.params)) << ','
               << format_real(p.fp_rate) << ',' << format_real(p.fn_rate) << ','
               << format_real(selection_score(p.fp_rate, p.fn_rate, roc.rule)) << ','
               << (i == roc.best ? 1 : 0) << '\n';
        }
        return;
    }
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < roc.points.size(); ++i) {
        const auto& p = roc.points[i];
        points.push_back({{"index", i},
                          {"detector", detector_name(p.params)},
                          {"params", describe_params(p.params)},
                          {"fp_rate", p.fp_rate},
                          {"fn_rate", p.fn_rate},
                          {"score", selection_score(p.fp_rate, p.fn_rate, roc.rule)}});
    }
    os << nlohmann::json{{"selection", to_string(roc.rule)}, {"selected", roc.best}, {"points", points}}.dump(2)
       << '\n';
}

}  // namespace impulse
