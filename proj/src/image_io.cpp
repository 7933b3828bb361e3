#include "wakeradon/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace wakeradon {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

Image require_square(int width, int height, const std::string& path) {
    if (width != height)
        throw IoError(path + ": image must be square, got " + std::to_string(width) + "x" +
                      std::to_string(height));
    return Image(width);
}

Image load_png(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw IoError(path + ": cannot open");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": corrupt or truncated PNG");
    }
    png_init_io(png, f.get());
    png_read_info(png, info);

    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (color_type != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": only grayscale PNG input is supported");
    }
    if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    png_read_update_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    Image img = require_square(width, height, path);

    const std::size_t row_bytes = png_get_rowbytes(png, info);
    std::vector<png_byte> row(row_bytes);
    for (int y = 0; y < height; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (int x = 0; x < width; ++x) {
            if (bit_depth == 16) {
                const unsigned v = (static_cast<unsigned>(row[2 * x]) << 8) | row[2 * x + 1];
                img.at(y, x) = static_cast<double>(v);
            } else {
                img.at(y, x) = static_cast<double>(row[x]);
            }
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    std::string magic;
    in >> magic;
    if (magic != "P5") throw IoError(path + ": not a binary PGM (P5)");

    auto next_int = [&]() {
        // skip whitespace and '#' comment lines
        for (;;) {
            const int c = in.peek();
            if (c == '#') {
                std::string line;
                std::getline(in, line);
            } else if (std::isspace(c)) {
                in.get();
            } else {
                break;
            }
        }
        long v = -1;
        in >> v;
        if (!in || v < 0) throw IoError(path + ": malformed PGM header");
        return v;
    };
    const long width = next_int();
    const long height = next_int();
    const long maxval = next_int();
    in.get();  // single whitespace after maxval
    if (maxval <= 0 || maxval > 65535) throw IoError(path + ": unsupported PGM maxval");

    Image img = require_square(static_cast<int>(width), static_cast<int>(height), path);
    const bool wide = maxval > 255;
    const std::size_t need = static_cast<std::size_t>(width) * height * (wide ? 2 : 1);
    std::vector<unsigned char> buf(need);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(need));
    if (static_cast<std::size_t>(in.gcount()) != need)
        throw IoError(path + ": truncated PGM pixel data");
    for (long y = 0; y < height; ++y)
        for (long x = 0; x < width; ++x) {
            const std::size_t k = static_cast<std::size_t>(y) * width + x;
            img.at(static_cast<int>(y), static_cast<int>(x)) =
                wide ? static_cast<double>((buf[2 * k] << 8) | buf[2 * k + 1])
                     : static_cast<double>(buf[k]);
        }
    return img;
}

Image load_raw_float(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    std::string tag;
    long side = -1;
    in >> tag >> side;
    if (tag != "M" || side <= 0) throw IoError(path + ": malformed raw float header");
    in.get();  // newline
    Image img(static_cast<int>(side));
    std::vector<float> buf(img.size());
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != buf.size() * sizeof(float))
        throw IoError(path + ": truncated raw float pixel data");
    for (std::size_t k = 0; k < buf.size(); ++k) img.pixels()[k] = buf[k];
    if (!img.all_finite()) throw IoError(path + ": non-finite pixel values");
    return img;
}

}  // namespace

Image load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError(path + ": cannot open");
    std::array<unsigned char, 8> head{};
    probe.read(reinterpret_cast<char*>(head.data()), head.size());
    if (probe.gcount() < 2) throw IoError(path + ": file too short to identify a format");
    probe.close();

    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (std::memcmp(head.data(), png_sig, 8) == 0) return load_png(path);
    if (head[0] == 'P' && head[1] == '5') return load_pgm(path);
    if (head[0] == 'M' && (head[1] == ' ' || head[1] == '\t')) return load_raw_float(path);
    throw IoError(path + ": unrecognized format (expected PNG, P5 PGM, or \"M <side>\" raw float)");
}

void save_image_raw(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "M " << img.side() << "\n";
    std::vector<float> buf(img.size());
    for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = static_cast<float>(img.pixels()[k]);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!out) throw IoError(path + ": write failed");
}

namespace {

std::vector<unsigned char> to_u8(const Image& img) {
    double lo = img.pixels()[0], hi = img.pixels()[0];
    for (double v : img.pixels()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    std::vector<unsigned char> out(img.size());
    for (std::size_t k = 0; k < img.size(); ++k)
        out[k] = static_cast<unsigned char>(std::lround((img.pixels()[k] - lo) * scale));
    return out;
}

void write_png(const std::string& path, int side, int channels,
               const std::vector<unsigned char>& data) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError(path + ": cannot open for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": PNG write failed");
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, side, side, 8,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < side; ++y)
        png_write_row(png, const_cast<png_bytep>(&data[static_cast<std::size_t>(y) * side *
                                                       channels]));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void draw_half_line(std::vector<unsigned char>& rgb, int side, const WakeCandidate& cand,
                    const ShipMaskSpec& mask, unsigned char r, unsigned char g,
                    unsigned char b) {
    const double center = 0.5 * (side - 1);
    const double th = deg_to_rad(cand.theta_deg);
    const double ct = std::cos(th);
    const double st = std::sin(th);
    const double sx = mask.center_col - center;
    const double sy = mask.center_row - center;
    const double slack = cand.r - (sx * ct + sy * st);
    const double fx = sx + slack * ct;
    const double fy = sy + slack * st;
    const double dx = -cand.half_sign * st;
    const double dy = cand.half_sign * ct;
    for (int k = 0;; ++k) {
        const int col = static_cast<int>(std::lround(fx + k * dx + center));
        const int row = static_cast<int>(std::lround(fy + k * dy + center));
        if (col < 0 || col >= side || row < 0 || row >= side) break;
        const std::size_t at = (static_cast<std::size_t>(row) * side + col) * 3;
        rgb[at] = r;
        rgb[at + 1] = g;
        rgb[at + 2] = b;
    }
}

}  // namespace

void save_image_png(const std::string& path, const Image& img) {
    write_png(path, img.side(), 1, to_u8(img));
}

void save_overlay_png(const std::string& path, const Image& img, const WakeReport& report,
                      const ShipMaskSpec& resolved_mask) {
    const std::vector<unsigned char> gray = to_u8(img);
    std::vector<unsigned char> rgb(gray.size() * 3);
    for (std::size_t k = 0; k < gray.size(); ++k) {
        rgb[3 * k] = gray[k];
        rgb[3 * k + 1] = gray[k];
        rgb[3 * k + 2] = gray[k];
    }
    for (int s = 0; s < 5; ++s) {
        const WakeSlot& slot = report.slots[s];
        if (!slot.detected || !slot.candidate) continue;
        const WakeCandidate& cand = *slot.candidate;
        if (cand.kind == WakeKind::kTurbulent)
            draw_half_line(rgb, img.side(), cand, resolved_mask, 255, 255, 0);  // yellow
        else if (cand.kind == WakeKind::kNarrowV)
            draw_half_line(rgb, img.side(), cand, resolved_mask, 0, 255, 0);  // green
        else
            draw_half_line(rgb, img.side(), cand, resolved_mask, 255, 0, 0);  // red
    }
    write_png(path, img.side(), 3, rgb);
}

}  // namespace wakeradon
