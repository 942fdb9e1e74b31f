#include "impulse/vector_filters.hpp"

#include <algorithm>
#include <cmath>

#include "impulse/parallel.hpp"

namespace impulse {

double l2_distance(Pixel a, Pixel b) noexcept {
    const int dr = a.r - b.r;
    const int dg = a.g - b.g;
    const int db = a.b - b.b;
    return std::sqrt(static_cast<double>(dr * dr + dg * dg + db * db));
}

DistanceMatrix distance_matrix(const Window& w) noexcept {
    DistanceMatrix d{};
    for (int i = 0; i < kWindowSize; ++i) {
        for (int j = i + 1; j < kWindowSize; ++j) {
            const double v = l2_distance(w.values[i], w.values[j]);
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    return d;
}

AggregateScores aggregate_distances(const Window& w) noexcept {
    const DistanceMatrix d = distance_matrix(w);
    AggregateScores s{};
    for (int i = 0; i < kWindowSize; ++i) {
        double sum = 0.0;
        for (int j = 0; j < kWindowSize; ++j) sum += d[i][j];
        s[i] = sum;
    }
    return s;
}

RankWeighting::RankWeighting(WeightingKind kind) : kind_(kind) {
    for (int r = 1; r <= kWindowSize; ++r) {
        switch (kind) {
            case WeightingKind::Uniform: table_[r - 1] = 1.0; break;
            case WeightingKind::Reciprocal: table_[r - 1] = 1.0 / r; break;
            case WeightingKind::ReciprocalSquared: table_[r - 1] = 1.0 / (r * r); break;
        }
    }
}

RankWeighting RankWeighting::parse(const std::string& name) {
    if (name == "uniform" || name == "1") return RankWeighting(WeightingKind::Uniform);
    if (name == "1/r") return RankWeighting(WeightingKind::Reciprocal);
    if (name == "1/r2" || name == "1/r^2") return RankWeighting(WeightingKind::ReciprocalSquared);
    throw ConfigError("weighting", "unknown weighting '" + name + "' (expected uniform, 1/r or 1/r2)");
}

std::string RankWeighting::name() const {
    switch (kind_) {
        case WeightingKind::Uniform: return "uniform";
        case WeightingKind::Reciprocal: return "1/r";
        case WeightingKind::ReciprocalSquared: return "1/r2";
    }
    return "uniform";
}

AggregateScores rank_weighted_scores(const DistanceMatrix& d, const RankWeighting& f) noexcept {
    AggregateScores s{};
    for (int i = 0; i < kWindowSize; ++i) {
        std::array<double, kWindowSize> row = d[i];
        std::sort(row.begin(), row.end());
        double sum = 0.0;
        for (int r = 0; r < kWindowSize; ++r) sum += f.weight(r) * row[r];
        s[i] = sum;
    }
    return s;
}

AggregateScores rank_weighted_scores(const Window& w, const RankWeighting& f) noexcept {
    return rank_weighted_scores(distance_matrix(w), f);
}

int argmin_index(const AggregateScores& scores) noexcept {
    int best = 0;
    for (int i = 1; i < kWindowSize; ++i) {
        if (scores[i] < scores[best]) best = i;
    }
    return best;
}

Pixel vmf(const Window& w) noexcept { return w.values[argmin_index(aggregate_distances(w))]; }

Pixel rwvmf(const Window& w, const RankWeighting& f) noexcept {
    return w.values[argmin_index(rank_weighted_scores(w, f))];
}

Pixel amf(const Window& w, const std::array<bool, kWindowSize>& clean_flags) noexcept {
    int sum[3] = {0, 0, 0};
    int n = 0;
    for (int i = 0; i < kWindowSize; ++i) {
        if (!clean_flags[i]) continue;
        for (int ch = 0; ch < 3; ++ch) sum[ch] += w.values[i][ch];
        ++n;
    }
    if (n == 0) return vmf(w);
    Pixel out;
    // Round half up; sums are non-negative.
    for (int ch = 0; ch < 3; ++ch) out[ch] = saturate_u8((2 * sum[ch] + n) / (2 * n));
    return out;
}

ColorImage vmf_replace(const ColorImage& img, const BinaryMask& mask) {
    if (!img.same_shape(mask)) throw ShapeError("vmf_replace: mask shape differs from image");
    ColorImage out = img;
    parallel_rows(img.height(), [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            for (int c = 0; c < img.width(); ++c) {
                if (mask(r, c)) out(r, c) = vmf(window_at(img, r, c));
            }
        }
    });
    return out;
}

ColorImage vmf_image(const ColorImage& img) {
    ColorImage out(img.width(), img.height());
    parallel_rows(img.height(), [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            for (int c = 0; c < img.width(); ++c) out(r, c) = vmf(window_at(img, r, c));
        }
    });
    return out;
}

}  // namespace impulse
