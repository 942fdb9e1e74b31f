#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "impulse/detectors.hpp"
#include "impulse/noise.hpp"
#include "oracles.hpp"

using namespace impulse;

namespace {

ColorImage field_with(Pixel bg, Pixel spot, int w = 9, int h = 9) {
    ColorImage img(w, h, bg);
    img(h / 2, w / 2) = spot;
    return img;
}

Window window_of(const std::array<Pixel, 9>& v) {
    Window w;
    w.values = v;
    return w;
}

ColorImage textured(std::uint64_t seed) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    ColorImage img(40, 32);
    for (int r = 0; r < 32; ++r) {
        for (int c = 0; c < 40; ++c) {
            img(r, c) = {static_cast<std::uint8_t>(60 + 3 * r + rng() % 20), static_cast<std::uint8_t>(90 + 2 * c),
                         static_cast<std::uint8_t>(120 + (r * c) % 40)};
        }
    }
    return corrupt(img, NoiseSpec{NoiseFamily::CI, 1, 0.15, seed}).noisy;
}

bool subset(const BinaryMask& a, const BinaryMask& b) { return mask_count(mask_difference(a, b)) == 0; }

}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(validate(Dm1Config{-1.0}), ConfigError);
    CHECK_THROWS_AS(validate(Dm3Config{1.5, 3}), ConfigError);
    CHECK_THROWS_AS(validate(Dm3Config{0.2, 9}), ConfigError);
    CHECK_THROWS_AS(validate(Dm4Config{{}}), ConfigError);
    Dm5Config bad;
    bad.level = 256;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    try {
        validate(Dm3Config{-0.1, 3});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "d");
    }
    for (const char* name : {"dm1", "dm2", "dm3", "dm4", "dm5"}) {
        const DetectorConfig cfg = default_detector(name);
        CHECK(detector_name(cfg) == name);
        CHECK_NOTHROW(validate(cfg));
    }
    CHECK_THROWS_AS(default_detector("dm6"), ConfigError);
    CHECK(describe_params(Dm3Config{0.25, 3}) == "d=0.25;k=3");
}

TEST_CASE("constant image gives an empty mask") {
    const ColorImage img(12, 10, Pixel{128, 128, 128});
    CHECK(mask_count(detect_dm1(img, Dm1Config{0.0}).mask) == 0);
    CHECK(mask_count(detect_dm1(img, Dm1Config{5.0}).mask) == 0);
    CHECK(mask_count(detect_dm2(img, Dm2Config{0.0}).mask) == 0);
    for (int k = 0; k < 8; ++k) CHECK(mask_count(detect_dm3(img, {0.25, k}).mask) == 0);
    CHECK(mask_count(detect_dm3(img, {0.25, 8}).mask) == img.size());
    CHECK(mask_count(detect_dm4(img, {}).mask) == 0);
    Dm5Config c;
    c.pset = 60;
    c.mset = 60;
    c.level = 200;
    CHECK(mask_count(detect_dm5(img, c).mask) == 0);
}

TEST_CASE("dm1 statistic") {
    // 255 in a constant-100 field: D = 155 sqrt(3).
    const ColorImage img = field_with({100, 100, 100}, {255, 255, 255});
    const auto out = detect_dm1(img, {0.0, RankWeighting(WeightingKind::Reciprocal)});
    const double d = 155.0 * std::sqrt(3.0);
    double h9 = 0;
    for (int r = 1; r <= 9; ++r) h9 += 1.0 / r;
    REQUIRE(out.per_pixel_stat.has_value());
    CHECK((*out.per_pixel_stat)(4, 4) == doctest::Approx(d * (h9 - 1.0 - 1.0 / 9.0)));
    CHECK(out.mask(4, 4) == 1);
    // Every 100-valued pixel in a neighbor's window scores D/9, so the
    // neighbor's own score is already minimal.
    CHECK((*out.per_pixel_stat)(3, 3) == 0.0);
    CHECK((*out.per_pixel_stat)(0, 0) == 0.0);
    CHECK(mask_count(out.mask) == 1);
    CHECK(detect_dm1(img, Dm1Config{d * (h9 - 1.0 - 1.0 / 9.0) + 1e-6}).mask(4, 4) == 0);
}

TEST_CASE("dm1 flags exactly where the center is not the argmin at alpha 0") {
    std::mt19937 rng(12);
    const ColorImage img = oracle::random_image(rng, 10, 8);
    const RankWeighting f;
    const auto out = detect_dm1(img, {0.0, f});
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 10; ++c) {
            const auto s = oracle::brute_rank_weighted(oracle::naive_window(img, r, c), f.table());
            const double ref = s[0] - *std::min_element(s.begin(), s.end());
            CHECK((*out.per_pixel_stat)(r, c) == doctest::Approx(ref).epsilon(1e-12));
            CHECK(out.mask(r, c) == (ref > 0 ? 1 : 0));
        }
    }
}

TEST_CASE("dm2 statistic") {
    std::mt19937 rng(13);
    const ColorImage img = oracle::random_image(rng, 9, 7);
    const RankWeighting f(WeightingKind::ReciprocalSquared);
    const auto out = detect_dm2(img, {10.0, f});
    for (int r = 0; r < 7; ++r) {
        for (int c = 0; c < 9; ++c) {
            const auto s = oracle::brute_rank_weighted(oracle::naive_window(img, r, c), f.table());
            const double ref = *std::min_element(s.begin(), s.end());
            CHECK((*out.per_pixel_stat)(r, c) == doctest::Approx(ref).epsilon(1e-12));
            CHECK(out.mask(r, c) == (ref > 10.0 ? 1 : 0));
        }
    }
    CHECK(mask_count(detect_dm2(img, {std::numeric_limits<double>::max(), f}).mask) == 0);
}

TEST_CASE("dm1 and dm2 are monotone in alpha") {
    const ColorImage img = textured(3);
    for (double a = 0; a < 300; a += 25) {
        CHECK(subset(detect_dm1(img, Dm1Config{a + 25}).mask, detect_dm1(img, Dm1Config{a}).mask));
        CHECK(subset(detect_dm2(img, Dm2Config{a + 25}).mask, detect_dm2(img, Dm2Config{a}).mask));
    }
}

TEST_CASE("peer group size") {
    std::array<Pixel, 9> v;
    v.fill({33, 33, 33});
    CHECK(peer_group_size(window_of(v), 0, 0.01) == 8);
    v.fill({255, 255, 255});
    v[0] = {0, 0, 0};
    CHECK(peer_group_size(window_of(v), 0, 0.5) == 0);
    CHECK(peer_group_size(window_of(v), 3, 0.5) == 7);
    v.fill({10, 10, 10});
    v[0] = {0, 0, 0};
    CHECK(peer_group_size(window_of(v), 0, 0.1) == 8);

    std::mt19937 rng(14);
    for (int t = 0; t < 500; ++t) {
        const auto rv = oracle::random_window_values(rng);
        const double d = (rng() % 1000) / 999.0;
        CHECK(peer_group_size(window_of(rv), 0, d) == oracle::naive_peer_count(rv, d));
    }
}

TEST_CASE("dm3") {
    const ColorImage img = field_with({100, 100, 100}, {255, 255, 255});
    const auto out = detect_dm3(img, {0.25, 3});
    CHECK(out.mask(4, 4) == 1);
    CHECK(mask_count(out.mask) == 1);
    CHECK((*out.per_pixel_stat)(4, 4) == 0.0);
    CHECK((*out.per_pixel_stat)(3, 4) == 7.0);

    const ColorImage tex = textured(4);
    for (int k = 0; k < 8; ++k) CHECK(subset(detect_dm3(tex, {0.2, k}).mask, detect_dm3(tex, {0.2, k + 1}).mask));
    for (double d = 0.05; d < 0.9; d += 0.1)
        CHECK(subset(detect_dm3(tex, {d + 0.1, 3}).mask, detect_dm3(tex, {d, 3}).mask));
}

TEST_CASE("dm4") {
    const ColorImage tex = textured(5);
    const Dm3Config step{0.3, 2};
    CHECK(detect_dm4(tex, Dm4Config{{{0.3, 2}}}).mask == detect_dm3(tex, step).mask);

    const Dm4Config def;
    CHECK(def.schedule.front() == PeerGroupStep{0.25, 3});
    const auto out = detect_dm4(tex, def);
    CHECK(subset(detect_dm3(tex, {0.25, 3}).mask, out.mask));
    for (int r = 0; r < tex.height(); ++r) {
        for (int c = 0; c < tex.width(); ++c) {
            const double pass = (*out.per_pixel_stat)(r, c);
            CHECK(pass >= 0.0);
            CHECK(pass <= 3.0);
            CHECK((pass > 0) == (out.mask(r, c) == 1));
        }
    }

    // Two adjacent impulses: each sees the other as a peer in pass 1 only
    // if k allows it; the default schedule catches both by pass 2.
    ColorImage pair(9, 9, Pixel{100, 100, 100});
    pair(4, 4) = {255, 255, 255};
    pair(4, 5) = {255, 255, 255};
    const auto pout = detect_dm4(pair, def);
    CHECK(pout.mask(4, 4) == 1);
    CHECK(pout.mask(4, 5) == 1);
    CHECK((*pout.per_pixel_stat)(4, 4) <= 2.0);
    CHECK((*pout.per_pixel_stat)(4, 5) <= 2.0);
    CHECK(mask_count(pout.mask) == 2);
}

TEST_CASE("dm5 examples") {
    const ColorImage grey(11, 11, Pixel{128, 128, 128});
    Dm5Config c;
    c.pset = 60;
    c.mset = 60;
    c.level = 128;
    // Every pixel passes the M3 threshold here, and remove_interior keeps the
    // border of a full plane; away from it the mask is empty.
    const auto subs = dm5_submasks(grey, c);
    const BinaryMask m = detect_dm5(grey, c).mask;
    for (int r = 1; r < 10; ++r)
        for (int cc = 1; cc < 10; ++cc) CHECK(m(r, cc) == 0);
    CHECK(mask_count(subs[0]) == 0);
    CHECK(mask_count(subs[1]) == 0);
    CHECK(mask_count(subs[3]) == 0);
    CHECK(mask_count(subs[4]) == 0);

    const Dm5Config def;
    const auto salt = detect_dm5(field_with({128, 128, 128}, {255, 255, 255}), def);
    CHECK(salt.mask(4, 4) == 1);
    const auto pepper = detect_dm5(field_with({128, 128, 128}, {0, 0, 0}), def);
    CHECK(pepper.mask(4, 4) == 1);
    CHECK(dm5_submasks(field_with({128, 128, 128}, {0, 0, 0}), def)[0](4, 4) == 1);
}

TEST_CASE("dm5 mask is the union of its sub-masks") {
    const ColorImage tex = textured(6);
    for (int level : {0, 20, 60, 140}) {
        Dm5Config c;
        c.level = level;
        c.level_override[2] = 250;
        const auto subs = dm5_submasks(tex, c);
        BinaryMask u(tex.width(), tex.height());
        StatMap votes(tex.width(), tex.height());
        for (const auto& s : subs) {
            u = mask_union(u, s);
            for (std::size_t i = 0; i < s.size(); ++i) votes.values()[i] += s.values()[i];
        }
        const auto out = detect_dm5(tex, c);
        CHECK(out.mask == u);
        CHECK(*out.per_pixel_stat == votes);
    }
}

TEST_CASE("dm5 sub-masks follow their definitions") {
    const ColorImage tex = textured(7);
    Dm5Config c;
    c.pset = 180;
    c.mset = 30;
    c.level = 50;
    c.level_override[3] = 110;
    const auto subs = dm5_submasks(tex, c);
    const auto& b = c.selem;

    BinaryMask m1(tex.width(), tex.height());
    BinaryMask u2(tex.width(), tex.height());
    BinaryMask u3(tex.width(), tex.height());
    for (int ch = 0; ch < 3; ++ch) {
        const GrayImage x = extract_channel(tex, ch);
        m1 = mask_union(m1, threshold_bw(gray_bottom_hat(channel_shift(x, -c.mset), b), 50));
        m1 = mask_union(m1, threshold_bw(gray_bottom_hat(channel_shift(x, -c.pset), b), 50));
        u2 = mask_union(u2, threshold_bw(channel_shift(x, -c.pset), 50));
        u3 = mask_union(u3, threshold_bw(channel_shift(x, c.mset), 50));
    }
    CHECK(subs[0] == m1);
    CHECK(subs[1] == remove_interior(u2));
    CHECK(subs[2] == remove_interior(u3));
    CHECK(subs[3] == bottom_hat(threshold_bw(rgb_to_gray(tex), 110), b));
    CHECK(subs[4] == bottom_hat(threshold_bw(rgb_to_gray(channel_shift(tex, -c.pset)), 50), b));
}

TEST_CASE("detect dispatches on the config") {
    const ColorImage tex = textured(8);
    CHECK(detect(tex, DetectorConfig{Dm3Config{0.2, 2}}).mask == detect_dm3(tex, {0.2, 2}).mask);
    CHECK(detect(tex, DetectorConfig{Dm5Config{}}).mask == detect_dm5(tex, {}).mask);
    CHECK_THROWS_AS(detect(tex, DetectorConfig{Dm3Config{2.0, 2}}), ConfigError);
}
