#pragma once

#include <array>
#include <string>

#include "impulse/image.hpp"

namespace impulse {

/// Pairwise L2 distances between the nine window pixels.
using DistanceMatrix = std::array<std::array<double, kWindowSize>, kWindowSize>;
/// One score per window slot (aggregated or rank-weighted distance).
using AggregateScores = std::array<double, kWindowSize>;

/// Largest possible L2 distance between two 8-bit RGB pixels, 255*sqrt(3).
inline constexpr double kMaxPixelDistance = 441.6729559300637;

double l2_distance(Pixel a, Pixel b) noexcept;
DistanceMatrix distance_matrix(const Window& w) noexcept;

/// scores[i] = sum_j |x_i - x_j|.
AggregateScores aggregate_distances(const Window& w) noexcept;

enum class WeightingKind { Uniform, Reciprocal, ReciprocalSquared };

/// Rank weights f(1)..f(9) applied to a pixel's sorted distances.
class RankWeighting {
public:
    explicit RankWeighting(WeightingKind kind = WeightingKind::Reciprocal);

    WeightingKind kind() const noexcept { return kind_; }
    /// weight(0) is f(1).
    double weight(int rank_index) const noexcept { return table_[rank_index]; }
    const std::array<double, kWindowSize>& table() const noexcept { return table_; }

    /// Accepts "uniform", "1/r", "1/r2".
    static RankWeighting parse(const std::string& name);
    std::string name() const;

    friend bool operator==(const RankWeighting& a, const RankWeighting& b) noexcept {
        return a.kind_ == b.kind_;
    }

private:
    WeightingKind kind_;
    std::array<double, kWindowSize> table_{};
};

/// Delta_i = sum_r f(r) d_i(r) with each row of distances sorted ascending.
AggregateScores rank_weighted_scores(const Window& w, const RankWeighting& f) noexcept;
AggregateScores rank_weighted_scores(const DistanceMatrix& d, const RankWeighting& f) noexcept;

/// Index of the smallest score; ties go to the lowest index (center first).
int argmin_index(const AggregateScores& scores) noexcept;

/// Vector median: the window pixel with minimal aggregated distance.
Pixel vmf(const Window& w) noexcept;

/// Rank-weighted vector median.
Pixel rwvmf(const Window& w, const RankWeighting& f) noexcept;

/// Channel-wise rounded mean over slots whose clean flag is set. Falls back
/// to vmf(w) when no slot is clean.
Pixel amf(const Window& w, const std::array<bool, kWindowSize>& clean_flags) noexcept;

/// Replaces every pixel flagged in `mask` by the vmf of its window in `img`.
/// Windows always read the unmodified input.
ColorImage vmf_replace(const ColorImage& img, const BinaryMask& mask);

/// vmf at every pixel.
ColorImage vmf_image(const ColorImage& img);

}  // namespace impulse
