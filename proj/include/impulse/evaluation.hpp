#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "impulse/detectors.hpp"
#include "impulse/image.hpp"
#include "impulse/noise.hpp"
#include "impulse/pipeline.hpp"

namespace impulse {

struct MsePsnr {
    double mse = 0.0;
    /// +infinity when mse == 0.
    double psnr = 0.0;
};

/// MSE over all 3N channel values and PSNR = 20 log10(255 / sqrt(MSE)).
MsePsnr mse_psnr(const ColorImage& clean, const ColorImage& restored);
double psnr_from_mse(double mse) noexcept;

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const noexcept { return tp + fp + fn + tn; }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(const BinaryMask& truth, const BinaryMask& detected);

struct ErrorRates {
    /// fp / (fp + tn): clean pixels wrongly flagged.
    double fp_rate = 0.0;
    /// fn / (fn + tp): corrupted pixels missed.
    double fn_rate = 0.0;
};

/// A zero denominator yields a rate of 0.
ErrorRates rates(const ConfusionCounts& c) noexcept;

struct RocPoint {
    DetectorConfig params;
    double fp_rate = 0.0;
    double fn_rate = 0.0;
};

/// How a single operating point is picked from a ROC sweep.
enum class Selection {
    /// sqrt(fp^2 + fn^2), distance to the ideal corner.
    Euclidean,
    /// fp + fn.
    Sum,
};

Selection parse_selection(const std::string& name);
std::string to_string(Selection s);
double selection_score(double fp_rate, double fn_rate, Selection rule) noexcept;

struct RocResult {
    std::vector<RocPoint> points;  // grid order
    std::size_t best = 0;          // first point with the lowest score
    Selection rule = Selection::Euclidean;
};

/// Corrupts `clean` once with `spec` and scores every grid config against the
/// pixel-level ground truth. DM1/DM2 points that differ only in alpha share
/// one statistic map.
RocResult roc_sweep(const ColorImage& clean, const NoiseSpec& spec, std::span<const DetectorConfig> grid,
                    Selection rule = Selection::Euclidean);

/// Same, on an existing corruption.
RocResult roc_sweep(const CorruptionResult& corrupted, std::span<const DetectorConfig> grid,
                    Selection rule = Selection::Euclidean);

struct TimedDenoise {
    DenoiseResult result;
    /// Median of the samples.
    double elapsed_seconds = 0.0;
    std::vector<double> samples;
};

/// One untimed warm-up run, then `repeats` timed runs of denoise().
TimedDenoise timed_denoise(const ColorImage& img, const SwitchingConfig& cfg, int repeats = 20);

double median(std::vector<double> values);

/// One row of a quality report. The optional perceptual metrics are never
/// computed here; the columns exist so externally computed values can be
/// merged into the same file.
struct QualityReport {
    std::string label;
    double mse = 0.0;
    double psnr = 0.0;
    double fp_rate = 0.0;
    double fn_rate = 0.0;
    double elapsed_seconds = 0.0;
    std::optional<double> fsimc;
    std::optional<double> sr_sim;
    std::optional<double> ifs;
};

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(const std::string& name);

/// CSV header: label,mse,psnr,fp_rate,fn_rate,elapsed_seconds,fsimc,sr_sim,ifs
void write_quality_reports(std::ostream& os, std::span<const QualityReport> reports, ReportFormat format);

/// CSV header: index,detector,params,fp_rate,fn_rate,score,selected
void write_roc(std::ostream& os, const RocResult& roc, ReportFormat format);

/// Fixed-point with six decimals; infinities print as "inf"/"-inf".
std::string format_real(double v);

}  // namespace impulse
