#pragma once

#include <string>
#include <utility>
#include <vector>

#include "impulse/image.hpp"

namespace impulse {

/// Binary probe shape with odd dimensions and its origin at the center cell,
/// which must be set.
class StructuringElement {
public:
    StructuringElement(int width, int height, std::vector<std::uint8_t> bits);

    /// size x size all-ones square; the default element is square(3).
    static StructuringElement square(int size);

    /// Rows of '0'/'1' separated by '/', e.g. "010/111/010".
    static StructuringElement parse(const std::string& text);
    std::string to_string() const;

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int origin_row() const noexcept { return height_ / 2; }
    int origin_col() const noexcept { return width_ / 2; }
    bool at(int row, int col) const noexcept { return bits_[row * width_ + col] != 0; }

    /// Point reflection about the origin.
    StructuringElement reflect() const;

    /// (drow, dcol) of every set cell relative to the origin.
    const std::vector<std::pair<int, int>>& offsets() const noexcept { return offsets_; }

    /// True when every cell is set (enables the separable fast path).
    bool is_full_rectangle() const noexcept { return offsets_.size() == bits_.size(); }

    friend bool operator==(const StructuringElement& a, const StructuringElement& b) noexcept {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.bits_ == b.bits_;
    }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
    std::vector<std::pair<int, int>> offsets_;
};

// Binary morphology. Cells outside the mask read as 0.

/// Minkowski dilation: 1 at s iff the reflected element placed at s hits a 1.
BinaryMask dilate(const BinaryMask& a, const StructuringElement& b);
/// 1 at s iff every set cell of the element placed at s lands on a 1.
BinaryMask erode(const BinaryMask& a, const StructuringElement& b);
/// Dilation followed by erosion.
BinaryMask close(const BinaryMask& a, const StructuringElement& b);
/// Erosion followed by dilation.
BinaryMask open(const BinaryMask& a, const StructuringElement& b);
/// close(a, b) minus a.
BinaryMask bottom_hat(const BinaryMask& a, const StructuringElement& b);

/// Clears 1-pixels whose four 4-connected neighbors are all 1. Neighbors
/// outside the mask count as 0, so border pixels are never cleared.
BinaryMask remove_interior(const BinaryMask& a);

// Grayscale morphology. Cells outside the image read as the nearest edge value.

/// Windowed max over the reflected element.
GrayImage gray_dilate(const GrayImage& a, const StructuringElement& b);
/// Windowed min over the element.
GrayImage gray_erode(const GrayImage& a, const StructuringElement& b);
/// gray_erode(gray_dilate(a)) - a, saturating at 0. Highlights dark spots.
GrayImage gray_bottom_hat(const GrayImage& a, const StructuringElement& b);

}  // namespace impulse
