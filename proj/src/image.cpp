#include "impulse/image.hpp"

namespace impulse {

namespace {

template <class Op>
BinaryMask combine(const BinaryMask& a, const BinaryMask& b, Op op, const char* name) {
    if (!a.same_shape(b)) throw ShapeError(std::string(name) + ": mask shapes differ");
    BinaryMask out(a.width(), a.height());
    auto av = a.values();
    auto bv = b.values();
    auto ov = out.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = op(av[i], bv[i]) ? 1 : 0;
    return out;
}

}  // namespace

Window window_at(const ColorImage& img, int row, int col) noexcept {
    Window w;
    w.row = row;
    w.col = col;
    for (int i = 0; i < kWindowSize; ++i) {
        w.values[i] = img.clamped(row + kWindowOffsets[i][0], col + kWindowOffsets[i][1]);
    }
    return w;
}

Window extract_window(const ColorImage& img, int row, int col) {
    if (!img.contains(row, col)) {
        throw CoordinateError("extract_window: (" + std::to_string(row) + ", " + std::to_string(col) +
                              ") outside image");
    }
    return window_at(img, row, col);
}

std::uint8_t luma(Pixel p) noexcept {
    // Integer form of round(0.299 r + 0.587 g + 0.114 b), exact for 8-bit input.
    const int v = 299 * p.r + 587 * p.g + 114 * p.b;
    return saturate_u8((v + 500) / 1000);
}

GrayImage rgb_to_gray(const ColorImage& img) {
    GrayImage out(img.width(), img.height());
    auto src = img.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = luma(src[i]);
    return out;
}

BinaryMask threshold_bw(const GrayImage& img, int level) {
    BinaryMask out(img.width(), img.height());
    auto src = img.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > level ? 1 : 0;
    return out;
}

GrayImage channel_shift(const GrayImage& img, int amount) {
    GrayImage out(img.width(), img.height());
    auto src = img.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = saturate_u8(src[i] + amount);
    return out;
}

ColorImage channel_shift(const ColorImage& img, int amount) {
    ColorImage out(img.width(), img.height());
    auto src = img.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = {saturate_u8(src[i].r + amount), saturate_u8(src[i].g + amount),
                  saturate_u8(src[i].b + amount)};
    }
    return out;
}

GrayImage extract_channel(const ColorImage& img, int channel) {
    if (channel < 0 || channel > 2) throw CoordinateError("extract_channel: channel must be 0..2");
    GrayImage out(img.width(), img.height());
    auto src = img.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i][channel];
    return out;
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
    return combine(a, b, [](auto x, auto y) { return x || y; }, "mask_union");
}

BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b) {
    return combine(a, b, [](auto x, auto y) { return x && y; }, "mask_intersection");
}

BinaryMask mask_difference(const BinaryMask& a, const BinaryMask& b) {
    return combine(a, b, [](auto x, auto y) { return x && !y; }, "mask_difference");
}

BinaryMask mask_complement(const BinaryMask& a) {
    BinaryMask out(a.width(), a.height());
    auto src = a.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 0 : 1;
    return out;
}

std::size_t mask_count(const BinaryMask& a) noexcept {
    std::size_t n = 0;
    for (auto v : a.values()) n += v ? 1 : 0;
    return n;
}

}  // namespace impulse
