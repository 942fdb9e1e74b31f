#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "impulse/vector_filters.hpp"
#include "oracles.hpp"

using namespace impulse;

namespace {

Window make_window(const std::array<Pixel, 9>& v) {
    Window w;
    w.values = v;
    return w;
}

Window filled(Pixel center, Pixel rest) {
    std::array<Pixel, 9> v;
    v.fill(rest);
    v[0] = center;
    return make_window(v);
}

// Random windows with few distinct levels so ties occur often.
Window coarse_window(std::mt19937& rng) {
    std::array<Pixel, 9> v;
    for (auto& p : v) {
        p = {static_cast<std::uint8_t>(rng() % 3 * 100), static_cast<std::uint8_t>(rng() % 3 * 100),
             static_cast<std::uint8_t>(rng() % 3 * 100)};
    }
    return make_window(v);
}

}  // namespace

TEST_CASE("l2 distance") {
    CHECK(l2_distance({0, 0, 0}, {0, 0, 0}) == 0.0);
    CHECK(l2_distance({0, 0, 0}, {255, 255, 255}) == doctest::Approx(441.6729559300637).epsilon(1e-12));
    CHECK(l2_distance({10, 0, 0}, {0, 0, 0}) == 10.0);
    CHECK(kMaxPixelDistance == doctest::Approx(255.0 * std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("aggregate distances") {
    const auto zero = aggregate_distances(filled({7, 7, 7}, {7, 7, 7}));
    for (double s : zero) CHECK(s == 0.0);

    const auto s = aggregate_distances(filled({255, 255, 255}, {0, 0, 0}));
    CHECK(s[0] == doctest::Approx(8 * kMaxPixelDistance));
    for (int i = 1; i < 9; ++i) CHECK(s[i] == doctest::Approx(kMaxPixelDistance));

    std::mt19937 rng(1);
    for (int t = 0; t < 200; ++t) {
        const auto v = oracle::random_window_values(rng);
        const auto got = aggregate_distances(make_window(v));
        for (int i = 0; i < 9; ++i) {
            double ref = 0;
            for (int j = 0; j < 9; ++j) ref += oracle::dist(v[i], v[j]);
            CHECK(got[i] == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("rank weighting tables") {
    const RankWeighting u(WeightingKind::Uniform);
    const RankWeighting r1(WeightingKind::Reciprocal);
    const RankWeighting r2(WeightingKind::ReciprocalSquared);
    for (int i = 0; i < 9; ++i) {
        CHECK(u.weight(i) == 1.0);
        CHECK(r1.weight(i) == doctest::Approx(1.0 / (i + 1)));
        CHECK(r2.weight(i) == doctest::Approx(1.0 / ((i + 1) * (i + 1))));
    }
    CHECK(RankWeighting::parse("uniform") == u);
    CHECK(RankWeighting::parse("1/r") == r1);
    CHECK(RankWeighting::parse("1/r2") == r2);
    CHECK(RankWeighting::parse(r2.name()) == r2);
    CHECK_THROWS_AS(RankWeighting::parse("1/r3"), ConfigError);
}

TEST_CASE("rank weighted scores") {
    std::mt19937 rng(2);
    for (int t = 0; t < 500; ++t) {
        const auto v = oracle::random_window_values(rng);
        const Window w = make_window(v);
        for (auto kind : {WeightingKind::Uniform, WeightingKind::Reciprocal, WeightingKind::ReciprocalSquared}) {
            const RankWeighting f(kind);
            const auto got = rank_weighted_scores(w, f);
            const auto ref = oracle::brute_rank_weighted(v, f.table());
            for (int i = 0; i < 9; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
        }
        // Uniform weighting collapses to the plain sum.
        const auto uni = rank_weighted_scores(w, RankWeighting(WeightingKind::Uniform));
        const auto agg = aggregate_distances(w);
        for (int i = 0; i < 9; ++i) CHECK(uni[i] == doctest::Approx(agg[i]).epsilon(1e-12));
    }
    const auto zero = rank_weighted_scores(filled({3, 4, 5}, {3, 4, 5}), RankWeighting());
    for (double s : zero) CHECK(s == 0.0);
}

TEST_CASE("argmin tie-break prefers the lowest index") {
    AggregateScores s{};
    s.fill(1.0);
    CHECK(argmin_index(s) == 0);
    s[4] = 0.5;
    s[7] = 0.5;
    CHECK(argmin_index(s) == 4);
}

TEST_CASE("vmf") {
    CHECK(vmf(filled({50, 50, 50}, {50, 50, 50})) == Pixel{50, 50, 50});
    CHECK(vmf(filled({255, 0, 0}, {100, 100, 100})) == Pixel{100, 100, 100});

    std::mt19937 rng(3);
    for (int t = 0; t < 2000; ++t) {
        const auto v = oracle::random_window_values(rng);
        CHECK(vmf(make_window(v)) == v[oracle::brute_vmf_index(v)]);
        const Window c = coarse_window(rng);
        CHECK(vmf(c) == c.values[oracle::brute_vmf_index(c.values)]);
    }
}

TEST_CASE("rwvmf") {
    std::mt19937 rng(4);
    const RankWeighting uniform(WeightingKind::Uniform);
    const RankWeighting sq(WeightingKind::ReciprocalSquared);
    for (int t = 0; t < 2000; ++t) {
        const auto v = oracle::random_window_values(rng);
        const Window w = make_window(v);
        CHECK(rwvmf(w, uniform) == vmf(w));
        CHECK(rwvmf(w, sq) == v[oracle::first_argmin(oracle::brute_rank_weighted(v, sq.table()))]);
    }
    CHECK(rwvmf(filled({9, 9, 9}, {9, 9, 9}), sq) == Pixel{9, 9, 9});
}

TEST_CASE("first weight has no effect") {
    // Every pixel's smallest distance is the zero distance to itself.
    std::mt19937 rng(6);
    for (int t = 0; t < 200; ++t) {
        const auto v = oracle::random_window_values(rng);
        std::array<double, 9> f{};
        for (int r = 0; r < 9; ++r) f[r] = 1.0 / (r + 1);
        const auto a = oracle::brute_rank_weighted(v, f);
        f[0] = 1000.0;
        const auto b = oracle::brute_rank_weighted(v, f);
        const auto lib = rank_weighted_scores(make_window(v), RankWeighting());
        for (int i = 0; i < 9; ++i) {
            CHECK(a[i] == doctest::Approx(b[i]));
            CHECK(lib[i] == doctest::Approx(a[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("neighbor permutation leaves the output unchanged") {
    std::mt19937 rng(7);
    for (int t = 0; t < 300; ++t) {
        auto v = oracle::random_window_values(rng);
        const Pixel before = vmf(make_window(v));
        std::shuffle(v.begin() + 1, v.end(), rng);
        // distinct random scores make the selected pixel, not its slot, invariant
        CHECK(vmf(make_window(v)) == before);
    }
}

TEST_CASE("amf") {
    CHECK(amf(filled({40, 40, 40}, {40, 40, 40}), std::array<bool, 9>{true, true, true, true, true, true, true,
                                                                       true, true}) == Pixel{40, 40, 40});
    std::array<Pixel, 9> v;
    v.fill({200, 200, 200});
    v[2] = {0, 0, 0};
    v[5] = {10, 20, 30};
    std::array<bool, 9> flags{};
    flags[2] = true;
    flags[5] = true;
    CHECK(amf(make_window(v), flags) == Pixel{5, 10, 15});

    // rounds half up
    v[5] = {1, 3, 255};
    CHECK(amf(make_window(v), flags) == Pixel{1, 2, 128});

    std::mt19937 rng(8);
    const auto r = oracle::random_window_values(rng);
    CHECK(amf(make_window(r), std::array<bool, 9>{}) == vmf(make_window(r)));
}

TEST_CASE("image-level replacement") {
    std::mt19937 rng(9);
    const ColorImage img = oracle::random_image(rng, 13, 9);
    const BinaryMask mask = oracle::random_mask(rng, 13, 9, 0.3);
    const ColorImage out = vmf_replace(img, mask);
    const ColorImage full = vmf_image(img);
    for (int r = 0; r < 9; ++r) {
        for (int c = 0; c < 13; ++c) {
            const auto win = oracle::naive_window(img, r, c);
            const Pixel ref = win[oracle::brute_vmf_index(win)];
            CHECK(full(r, c) == ref);
            CHECK(out(r, c) == (mask(r, c) ? ref : img(r, c)));
        }
    }
    CHECK_THROWS_AS(vmf_replace(img, BinaryMask(9, 13)), ShapeError);
}
