#include "impulse/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

namespace impulse {

namespace {

std::string extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

[[noreturn]] void read_fail(const std::filesystem::path& path, const std::string& why) {
    throw IoError(IoError::Kind::Read, "cannot read '" + path.string() + "': " + why);
}

[[noreturn]] void write_fail(const std::filesystem::path& path, const std::string& why) {
    throw IoError(IoError::Kind::Write, "cannot write '" + path.string() + "': " + why);
}

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) read_fail(path, "file not found or not readable");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const std::filesystem::path& path, const std::string& header, const std::vector<unsigned char>& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) write_fail(path, "cannot open for writing");
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (!out) write_fail(path, "write error");
}

/// Netpbm header: magic, width, height and (unless bitmap) maxval, with
/// '#' comments. Returns the offset of the first raster byte.
struct NetpbmHeader {
    int width = 0;
    int height = 0;
    int maxval = 1;
    std::size_t data_offset = 0;
};

NetpbmHeader parse_netpbm(const std::vector<unsigned char>& buf, const std::string& magic, bool has_maxval,
                          const std::filesystem::path& path) {
    if (buf.size() < 2 || buf[0] != magic[0] || buf[1] != magic[1]) read_fail(path, "not a " + magic + " file");
    std::size_t pos = 2;
    auto next_int = [&]() {
        while (pos < buf.size()) {
            if (buf[pos] == '#') {
                while (pos < buf.size() && buf[pos] != '\n') ++pos;
            } else if (std::isspace(buf[pos])) {
                ++pos;
            } else {
                break;
            }
        }
        if (pos >= buf.size() || !std::isdigit(buf[pos])) read_fail(path, "malformed header");
        long v = 0;
        while (pos < buf.size() && std::isdigit(buf[pos])) {
            v = v * 10 + (buf[pos++] - '0');
            if (v > 1 << 24) read_fail(path, "header value too large");
        }
        return static_cast<int>(v);
    };
    NetpbmHeader h;
    h.width = next_int();
    h.height = next_int();
    if (has_maxval) h.maxval = next_int();
    if (pos >= buf.size() || !std::isspace(buf[pos])) read_fail(path, "malformed header");
    h.data_offset = pos + 1;
    return h;
}

ColorImage read_ppm(const std::filesystem::path& path) {
    const auto buf = slurp(path);
    const auto h = parse_netpbm(buf, "P6", true, path);
    if (h.maxval != 255) read_fail(path, "only 8-bit PPM (maxval 255) is supported");
    const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
    if (buf.size() < h.data_offset + 3 * n) read_fail(path, "truncated pixel data");
    std::vector<Pixel> pixels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned char* p = buf.data() + h.data_offset + 3 * i;
        pixels[i] = {p[0], p[1], p[2]};
    }
    try {
        return ColorImage(h.width, h.height, std::move(pixels));
    } catch (const ShapeError& e) {
        read_fail(path, e.what());
    }
}

void write_ppm(const std::filesystem::path& path, const ColorImage& img) {
    std::vector<unsigned char> body;
    body.reserve(img.size() * 3);
    for (const Pixel& p : img.values()) {
        body.push_back(p.r);
        body.push_back(p.g);
        body.push_back(p.b);
    }
    spill(path, "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n", body);
}

BinaryMask read_pbm(const std::filesystem::path& path) {
    const auto buf = slurp(path);
    const auto h = parse_netpbm(buf, "P4", false, path);
    if (h.width < 1 || h.height < 1) read_fail(path, "empty bitmap");
    const std::size_t stride = (static_cast<std::size_t>(h.width) + 7) / 8;
    if (buf.size() < h.data_offset + stride * h.height) read_fail(path, "truncated bitmap data");
    BinaryMask mask(h.width, h.height);
    for (int r = 0; r < h.height; ++r) {
        const unsigned char* row = buf.data() + h.data_offset + stride * r;
        for (int c = 0; c < h.width; ++c) mask(r, c) = (row[c / 8] >> (7 - c % 8)) & 1;
    }
    return mask;
}

void write_pbm(const std::filesystem::path& path, const BinaryMask& mask) {
    const std::size_t stride = (static_cast<std::size_t>(mask.width()) + 7) / 8;
    std::vector<unsigned char> body(stride * mask.height(), 0);
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask(r, c)) body[stride * r + c / 8] |= static_cast<unsigned char>(0x80 >> (c % 8));
        }
    }
    spill(path, "P4\n" + std::to_string(mask.width()) + " " + std::to_string(mask.height()) + "\n", body);
}

struct PngImageGuard {
    png_image* image;
    ~PngImageGuard() { png_image_free(image); }
};

std::vector<unsigned char> read_png_pixels(const std::filesystem::path& path, png_uint_32 format, int& width,
                                           int& height) {
    const auto encoded = slurp(path);
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    PngImageGuard guard{&image};
    if (!png_image_begin_read_from_memory(&image, encoded.data(), encoded.size())) {
        read_fail(path, image.message);
    }
    image.format = format;
    std::vector<unsigned char> pixels(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) read_fail(path, image.message);
    width = static_cast<int>(image.width);
    height = static_cast<int>(image.height);
    return pixels;
}

ColorImage read_png(const std::filesystem::path& path) {
    int w = 0;
    int h = 0;
    const auto raw = read_png_pixels(path, PNG_FORMAT_RGB, w, h);
    std::vector<Pixel> pixels(static_cast<std::size_t>(w) * h);
    for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = {raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
    try {
        return ColorImage(w, h, std::move(pixels));
    } catch (const ShapeError& e) {
        read_fail(path, e.what());
    }
}

void write_png(const std::filesystem::path& path, const ColorImage& img) {
    std::vector<unsigned char> raw;
    raw.reserve(img.size() * 3);
    for (const Pixel& p : img.values()) {
        raw.push_back(p.r);
        raw.push_back(p.g);
        raw.push_back(p.b);
    }
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_RGB;
    PngImageGuard guard{&image};
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, raw.data(), 0, nullptr)) {
        write_fail(path, image.message);
    }
}

BinaryMask read_png_mask(const std::filesystem::path& path) {
    int w = 0;
    int h = 0;
    const auto raw = read_png_pixels(path, PNG_FORMAT_GRAY, w, h);
    BinaryMask mask(w, h);
    auto mv = mask.values();
    for (std::size_t i = 0; i < mv.size(); ++i) mv[i] = raw[i] >= 128 ? 1 : 0;
    return mask;
}

/// 1-bit grayscale PNG through the low-level API (the simplified API cannot
/// write sub-byte depths).
void write_png_mask(const std::filesystem::path& path, const BinaryMask& mask) {
    std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.string().c_str(), "wb"), &std::fclose);
    if (!fp) write_fail(path, "cannot open for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        write_fail(path, "libpng initialization failed");
    }
    const std::size_t stride = (static_cast<std::size_t>(mask.width()) + 7) / 8;
    std::vector<png_byte> rows(stride * mask.height(), 0);
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask(r, c)) rows[stride * r + c / 8] |= static_cast<png_byte>(0x80 >> (c % 8));
        }
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        write_fail(path, "libpng write error");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(mask.width()), static_cast<png_uint_32>(mask.height()), 1,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int r = 0; r < mask.height(); ++r) png_write_row(png, rows.data() + stride * r);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

ColorImage read_color_image(const std::filesystem::path& path) {
    const auto ext = extension(path);
    if (ext == ".png") return read_png(path);
    if (ext == ".ppm") return read_ppm(path);
    read_fail(path, "unsupported color image extension '" + ext + "' (expected .png or .ppm)");
}

void write_color_image(const std::filesystem::path& path, const ColorImage& img) {
    const auto ext = extension(path);
    if (ext == ".png") return write_png(path, img);
    if (ext == ".ppm") return write_ppm(path, img);
    write_fail(path, "unsupported color image extension '" + ext + "' (expected .png or .ppm)");
}

BinaryMask read_mask(const std::filesystem::path& path) {
    const auto ext = extension(path);
    if (ext == ".png") return read_png_mask(path);
    if (ext == ".pbm") return read_pbm(path);
    read_fail(path, "unsupported mask extension '" + ext + "' (expected .png or .pbm)");
}

void write_mask(const std::filesystem::path& path, const BinaryMask& mask) {
    const auto ext = extension(path);
    if (ext == ".png") return write_png_mask(path, mask);
    if (ext == ".pbm") return write_pbm(path, mask);
    write_fail(path, "unsupported mask extension '" + ext + "' (expected .png or .pbm)");
}

}  // namespace impulse
