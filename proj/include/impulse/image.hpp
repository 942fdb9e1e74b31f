#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "impulse/error.hpp"

namespace impulse {

struct Pixel {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    constexpr std::uint8_t operator[](int channel) const noexcept {
        return channel == 0 ? r : (channel == 1 ? g : b);
    }
    constexpr std::uint8_t& operator[](int channel) noexcept {
        return channel == 0 ? r : (channel == 1 ? g : b);
    }

    friend constexpr bool operator==(const Pixel&, const Pixel&) = default;
};

/// Row-major raster with top-left origin. `Tag` keeps semantically different
/// rasters with the same element type (gray levels vs. mask bits) apart.
template <class T, class Tag>
class Raster {
public:
    using value_type = T;

    Raster() = default;

    Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
        check_extent(width, height);
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    Raster(int width, int height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        check_extent(width, height);
        if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
            throw ShapeError("raster data length does not match width*height");
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    bool contains(int row, int col) const noexcept {
        return row >= 0 && row < height_ && col >= 0 && col < width_;
    }

    const T& operator()(int row, int col) const noexcept {
        return data_[static_cast<std::size_t>(row) * width_ + col];
    }
    T& operator()(int row, int col) noexcept {
        return data_[static_cast<std::size_t>(row) * width_ + col];
    }

    const T& at(int row, int col) const {
        if (!contains(row, col)) throw CoordinateError(coord_message(row, col));
        return (*this)(row, col);
    }
    T& at(int row, int col) {
        if (!contains(row, col)) throw CoordinateError(coord_message(row, col));
        return (*this)(row, col);
    }

    /// Clamp-to-edge access.
    const T& clamped(int row, int col) const noexcept {
        row = row < 0 ? 0 : (row >= height_ ? height_ - 1 : row);
        col = col < 0 ? 0 : (col >= width_ ? width_ - 1 : col);
        return (*this)(row, col);
    }

    std::span<const T> row(int r) const noexcept {
        return {data_.data() + static_cast<std::size_t>(r) * width_, static_cast<std::size_t>(width_)};
    }
    std::span<T> row(int r) noexcept {
        return {data_.data() + static_cast<std::size_t>(r) * width_, static_cast<std::size_t>(width_)};
    }

    std::span<const T> values() const noexcept { return data_; }
    std::span<T> values() noexcept { return data_; }

    template <class OtherT, class OtherTag>
    bool same_shape(const Raster<OtherT, OtherTag>& other) const noexcept {
        return width_ == other.width() && height_ == other.height();
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    static void check_extent(int width, int height) {
        if (width < Tag::min_extent || height < Tag::min_extent) {
            throw ShapeError("raster must be at least " + std::to_string(Tag::min_extent) + "x" +
                             std::to_string(Tag::min_extent) + ", got " + std::to_string(width) +
                             "x" + std::to_string(height));
        }
    }

    std::string coord_message(int row, int col) const {
        return "coordinate (" + std::to_string(row) + ", " + std::to_string(col) +
               ") outside " + std::to_string(height_) + "x" + std::to_string(width_) + " raster";
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

struct ColorTag { static constexpr int min_extent = 3; };
struct GrayTag { static constexpr int min_extent = 1; };
struct MaskTag { static constexpr int min_extent = 1; };
struct StatTag { static constexpr int min_extent = 1; };

/// 8-bit RGB image; at least 3x3 so a full filtering window always exists.
using ColorImage = Raster<Pixel, ColorTag>;
using GrayImage = Raster<std::uint8_t, GrayTag>;
/// One byte per pixel holding 0 or 1.
using BinaryMask = Raster<std::uint8_t, MaskTag>;
/// Per-pixel real-valued detector statistic.
using StatMap = Raster<double, StatTag>;

inline constexpr int kWindowSize = 9;

/// 3x3 neighborhood. values[0] is the center, values[1..8] are the neighbors
/// in row-major order with the center skipped.
struct Window {
    int row = 0;
    int col = 0;
    std::array<Pixel, kWindowSize> values{};
};

/// (drow, dcol) of window slot i relative to the center.
inline constexpr std::array<std::array<int, 2>, kWindowSize> kWindowOffsets{{
    {0, 0}, {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
}};

/// Border pixels use replicate padding.
Window extract_window(const ColorImage& img, int row, int col);

/// Unchecked variant for hot loops; the caller guarantees the coordinate.
Window window_at(const ColorImage& img, int row, int col) noexcept;

/// BT.601 luma, rounded to nearest.
GrayImage rgb_to_gray(const ColorImage& img);
std::uint8_t luma(Pixel p) noexcept;

/// 1 where value > level.
BinaryMask threshold_bw(const GrayImage& img, int level);

/// Saturating add of `amount` to every value.
GrayImage channel_shift(const GrayImage& img, int amount);
/// Saturating add of `amount` to all three channels.
ColorImage channel_shift(const ColorImage& img, int amount);

GrayImage extract_channel(const ColorImage& img, int channel);

inline std::uint8_t saturate_u8(int v) noexcept {
    return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

// Bitwise set algebra on masks. All operands must share a shape.
BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_difference(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_complement(const BinaryMask& a);
std::size_t mask_count(const BinaryMask& a) noexcept;

}  // namespace impulse
