#include "impulse/morphology.hpp"

#include <algorithm>
#include <optional>

namespace impulse {

StructuringElement::StructuringElement(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
    if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0) {
        throw ConfigError("selem", "structuring element dimensions must be odd and positive");
    }
    if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw ConfigError("selem", "structuring element bit count does not match its dimensions");
    }
    for (auto& v : bits_) v = v ? 1 : 0;
    if (!at(origin_row(), origin_col())) {
        throw ConfigError("selem", "structuring element origin (center) must be set");
    }
    for (int r = 0; r < height_; ++r) {
        for (int c = 0; c < width_; ++c) {
            if (at(r, c)) offsets_.emplace_back(r - origin_row(), c - origin_col());
        }
    }
}

StructuringElement StructuringElement::square(int size) {
    return StructuringElement(size, size,
                              std::vector<std::uint8_t>(static_cast<std::size_t>(size) * size, 1));
}

StructuringElement StructuringElement::parse(const std::string& text) {
    std::vector<std::string> rows(1);
    for (char ch : text) {
        if (ch == '/') {
            rows.emplace_back();
        } else if (ch == '0' || ch == '1') {
            rows.back().push_back(ch);
        } else {
            throw ConfigError("selem", "structuring element may contain only '0', '1' and '/'");
        }
    }
    const auto width = rows.front().size();
    if (width == 0) throw ConfigError("selem", "structuring element has an empty row");
    std::vector<std::uint8_t> bits;
    for (const auto& row : rows) {
        if (row.size() != width) throw ConfigError("selem", "structuring element rows differ in length");
        for (char ch : row) bits.push_back(ch == '1' ? 1 : 0);
    }
    return StructuringElement(static_cast<int>(width), static_cast<int>(rows.size()), std::move(bits));
}

std::string StructuringElement::to_string() const {
    std::string out;
    for (int r = 0; r < height_; ++r) {
        if (r) out.push_back('/');
        for (int c = 0; c < width_; ++c) out.push_back(at(r, c) ? '1' : '0');
    }
    return out;
}

StructuringElement StructuringElement::reflect() const {
    std::vector<std::uint8_t> bits(bits_.rbegin(), bits_.rend());
    return StructuringElement(width_, height_, std::move(bits));
}

namespace {

/// Sliding reduction over a rx x ry box, row pass then column pass. With
/// `outside` set, out-of-range cells read as that value; otherwise they
/// clamp to the nearest edge.
template <class R, class Op>
R separable_box(const R& a, int rx, int ry, Op op, std::optional<typename R::value_type> outside) {
    using T = typename R::value_type;
    const int w = a.width();
    const int h = a.height();
    R tmp(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            T acc = a(r, c);
            for (int k = c - rx; k <= c + rx; ++k) {
                if (k == c) continue;
                if (k < 0 || k >= w) {
                    acc = outside ? op(acc, *outside) : op(acc, a(r, std::clamp(k, 0, w - 1)));
                } else {
                    acc = op(acc, a(r, k));
                }
            }
            tmp(r, c) = acc;
        }
    }
    R out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            T acc = tmp(r, c);
            for (int k = r - ry; k <= r + ry; ++k) {
                if (k == r) continue;
                if (k < 0 || k >= h) {
                    acc = outside ? op(acc, *outside) : op(acc, tmp(std::clamp(k, 0, h - 1), c));
                } else {
                    acc = op(acc, tmp(k, c));
                }
            }
            out(r, c) = acc;
        }
    }
    return out;
}

constexpr auto kMax = [](std::uint8_t x, std::uint8_t y) { return x > y ? x : y; };
constexpr auto kMin = [](std::uint8_t x, std::uint8_t y) { return x < y ? x : y; };

}  // namespace

BinaryMask dilate(const BinaryMask& a, const StructuringElement& b) {
    if (b.is_full_rectangle()) {
        return separable_box(a, b.width() / 2, b.height() / 2, kMax, std::uint8_t{0});
    }
    BinaryMask out(a.width(), a.height());
    for (int r = 0; r < a.height(); ++r) {
        for (int c = 0; c < a.width(); ++c) {
            std::uint8_t v = 0;
            for (auto [dr, dc] : b.offsets()) {
                const int rr = r - dr;
                const int cc = c - dc;
                if (a.contains(rr, cc) && a(rr, cc)) {
                    v = 1;
                    break;
                }
            }
            out(r, c) = v;
        }
    }
    return out;
}

BinaryMask erode(const BinaryMask& a, const StructuringElement& b) {
    if (b.is_full_rectangle()) {
        return separable_box(a, b.width() / 2, b.height() / 2, kMin, std::uint8_t{0});
    }
    BinaryMask out(a.width(), a.height());
    for (int r = 0; r < a.height(); ++r) {
        for (int c = 0; c < a.width(); ++c) {
            std::uint8_t v = 1;
            for (auto [dr, dc] : b.offsets()) {
                const int rr = r + dr;
                const int cc = c + dc;
                if (!a.contains(rr, cc) || !a(rr, cc)) {
                    v = 0;
                    break;
                }
            }
            out(r, c) = v;
        }
    }
    return out;
}

BinaryMask close(const BinaryMask& a, const StructuringElement& b) { return erode(dilate(a, b), b); }

BinaryMask open(const BinaryMask& a, const StructuringElement& b) { return dilate(erode(a, b), b); }

BinaryMask bottom_hat(const BinaryMask& a, const StructuringElement& b) {
    return mask_difference(close(a, b), a);
}

BinaryMask remove_interior(const BinaryMask& a) {
    BinaryMask out = a;
    const int w = a.width();
    const int h = a.height();
    for (int r = 1; r + 1 < h; ++r) {
        for (int c = 1; c + 1 < w; ++c) {
            if (a(r, c) && a(r - 1, c) && a(r + 1, c) && a(r, c - 1) && a(r, c + 1)) out(r, c) = 0;
        }
    }
    return out;
}

GrayImage gray_dilate(const GrayImage& a, const StructuringElement& b) {
    if (b.is_full_rectangle()) return separable_box(a, b.width() / 2, b.height() / 2, kMax, std::nullopt);
    GrayImage out(a.width(), a.height());
    for (int r = 0; r < a.height(); ++r) {
        for (int c = 0; c < a.width(); ++c) {
            std::uint8_t v = 0;
            for (auto [dr, dc] : b.offsets()) v = std::max(v, a.clamped(r - dr, c - dc));
            out(r, c) = v;
        }
    }
    return out;
}

GrayImage gray_erode(const GrayImage& a, const StructuringElement& b) {
    if (b.is_full_rectangle()) return separable_box(a, b.width() / 2, b.height() / 2, kMin, std::nullopt);
    GrayImage out(a.width(), a.height());
    for (int r = 0; r < a.height(); ++r) {
        for (int c = 0; c < a.width(); ++c) {
            std::uint8_t v = 255;
            for (auto [dr, dc] : b.offsets()) v = std::min(v, a.clamped(r + dr, c + dc));
            out(r, c) = v;
        }
    }
    return out;
}

GrayImage gray_bottom_hat(const GrayImage& a, const StructuringElement& b) {
    const GrayImage closed = gray_erode(gray_dilate(a, b), b);
    GrayImage out(a.width(), a.height());
    auto cv = closed.values();
    auto av = a.values();
    auto ov = out.values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = saturate_u8(cv[i] - av[i]);
    return out;
}

}  // namespace impulse
