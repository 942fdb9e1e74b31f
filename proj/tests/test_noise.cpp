#include <cmath>

#include "doctest.h"
#include "impulse/noise.hpp"

using namespace impulse;

namespace {

// |observed - expected| within 3 binomial standard deviations.
bool within_3_sigma(std::size_t hits, std::size_t n, double prob) {
    const double mean = prob * static_cast<double>(n);
    const double sigma = std::sqrt(static_cast<double>(n) * prob * (1.0 - prob));
    return std::abs(static_cast<double>(hits) - mean) <= 3.0 * sigma;
}

const ColorImage& gray_field() {
    static const ColorImage img(512, 512, Pixel{128, 128, 128});
    return img;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((NoiseSpec{NoiseFamily::CI, 1, 0.0, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((NoiseSpec{NoiseFamily::CI, 1, 1.0, 1}.validate()), ConfigError);
    CHECK_THROWS_AS((NoiseSpec{NoiseFamily::CI, 4, 0.1, 1}.validate()), ConfigError);
    CHECK_NOTHROW((NoiseSpec{NoiseFamily::CT, 3, 0.5, 1}.validate()));
    CHECK(NoiseSpec{NoiseFamily::CI, 1, 0.1, 7}.describe() == "CI1 p=0.1 seed=7");
    CHECK(parse_noise_family("CT") == NoiseFamily::CT);
    CHECK_THROWS_AS(parse_noise_family("xx"), ConfigError);
}

TEST_CASE("rng mappings") {
    NoiseRng rng(42);
    for (int i = 0; i < 10000; ++i) {
        CHECK(rng.below(7) < 7);
        const double u = rng.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    // The engine's 10000th output is fixed by the standard.
    NoiseRng ref(5489);
    std::uint64_t last = 0;
    for (int i = 0; i < 10000; ++i) last = ref.next();
    CHECK(last == 9981545732273789042ULL);
}

TEST_CASE("corruption is deterministic in the seed") {
    const ColorImage img(64, 48, Pixel{90, 120, 150});
    for (auto fam : {NoiseFamily::CI, NoiseFamily::CT}) {
        for (int v = 1; v <= 3; ++v) {
            const NoiseSpec spec{fam, v, 0.3, 99};
            const auto a = corrupt(img, spec);
            const auto b = corrupt(img, spec);
            CHECK(a.noisy == b.noisy);
            CHECK(a.pixel_mask == b.pixel_mask);
            const auto c = corrupt(img, NoiseSpec{fam, v, 0.3, 100});
            CHECK_FALSE(a.noisy == c.noisy);
        }
    }
}

TEST_CASE("masks agree with the modified channels") {
    const ColorImage img(64, 64, Pixel{128, 128, 128});
    for (auto fam : {NoiseFamily::CI, NoiseFamily::CT}) {
        const auto res = corrupt(img, NoiseSpec{fam, 1, 0.2, 3});
        for (int r = 0; r < 64; ++r) {
            for (int c = 0; c < 64; ++c) {
                bool any = false;
                for (int ch = 0; ch < 3; ++ch) {
                    const bool hit = res.channel_mask[ch](r, c) != 0;
                    any = any || hit;
                    // variant 1 never draws 128, so a flag is equivalent to a change
                    CHECK(hit == (res.noisy(r, c)[ch] != 128));
                }
                CHECK(any == (res.pixel_mask(r, c) != 0));
                if (fam == NoiseFamily::CT) {
                    CHECK(res.channel_mask[0](r, c) == res.channel_mask[1](r, c));
                    CHECK(res.channel_mask[1](r, c) == res.channel_mask[2](r, c));
                }
            }
        }
    }
}

TEST_CASE("variant value ranges") {
    NoiseRng rng(1);
    double sum2 = 0;
    double sum3 = 0;
    const int n = 1000000;
    bool saw0 = false;
    bool saw255 = false;
    for (int i = 0; i < n; ++i) {
        const int v1 = draw_impulse(1, rng);
        CHECK((v1 == 0 || v1 == 255));
        saw0 = saw0 || v1 == 0;
        saw255 = saw255 || v1 == 255;
        sum2 += draw_impulse(2, rng);
        const int v3 = draw_impulse(3, rng);
        if (v3 >= 56 && v3 <= 199) FAIL("variant 3 drew " << v3);
        sum3 += v3;
    }
    CHECK(saw0);
    CHECK(saw255);
    CHECK(std::abs(sum2 / n - 127.5) < 0.5);
    CHECK(std::abs(sum3 / n - 127.5) < 0.5);
}

TEST_CASE("corrupted fractions") {
    const std::size_t n = gray_field().size();
    SUBCASE("CT p=0.1") {
        const auto res = corrupt(gray_field(), NoiseSpec{NoiseFamily::CT, 1, 0.1, 21});
        CHECK(std::abs(static_cast<double>(mask_count(res.pixel_mask)) / n - 0.1) < 0.005);
    }
    SUBCASE("CI p=0.1") {
        const auto res = corrupt(gray_field(), NoiseSpec{NoiseFamily::CI, 1, 0.1, 21});
        CHECK(std::abs(static_cast<double>(mask_count(res.pixel_mask)) / n - 0.271) < 0.006);
    }
    SUBCASE("CI p=0.2 per-case counts") {
        const double p = 0.2;
        const auto res = corrupt(gray_field(), NoiseSpec{NoiseFamily::CI, 2, p, 8});
        std::array<std::size_t, 4> cases{};
        for (int r = 0; r < 512; ++r) {
            for (int c = 0; c < 512; ++c) {
                int k = 0;
                for (int ch = 0; ch < 3; ++ch) k += res.channel_mask[ch](r, c);
                ++cases[k];
            }
        }
        const std::array<double, 4> prob{std::pow(1 - p, 3), 3 * p * std::pow(1 - p, 2), 3 * p * p * (1 - p),
                                         p * p * p};
        for (int k = 0; k < 4; ++k) CHECK(within_3_sigma(cases[k], n, prob[k]));
        for (int ch = 0; ch < 3; ++ch) CHECK(within_3_sigma(mask_count(res.channel_mask[ch]), n, p));
    }
}
