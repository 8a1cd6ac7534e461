#include "strokeplan/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <vector>

namespace strokeplan {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

void write_png_bytes(const std::string& path, const std::vector<uint8_t>& bytes, int width,
                     int height, int color_type) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("libpng write error: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const int channels = (color_type == PNG_COLOR_TYPE_RGB) ? 3 : 1;
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y) {
        rows[y] = const_cast<png_bytep>(bytes.data() + static_cast<size_t>(y) * width * channels);
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::vector<uint8_t> read_png_bytes(const std::string& path, int& width, int& height,
                                    bool want_rgb) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open for reading: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("libpng read error: " + path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    png_byte color_type = png_get_color_type(png, info);
    png_byte bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (want_rgb) {
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_gray_to_rgb(png);
    } else {
        if (color_type == PNG_COLOR_TYPE_RGB || color_type == PNG_COLOR_TYPE_RGB_ALPHA ||
            color_type == PNG_COLOR_TYPE_PALETTE)
            png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    }
    png_read_update_info(png, info);

    const int channels = want_rgb ? 3 : 1;
    std::vector<uint8_t> bytes(static_cast<size_t>(width) * height * channels);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y) {
        rows[y] = bytes.data() + static_cast<size_t>(y) * width * channels;
    }
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);
    return bytes;
}

uint8_t to_byte(float v) {
    int b = static_cast<int>(std::lround(255.0f * v));
    if (b < 0) b = 0;
    if (b > 255) b = 255;
    return static_cast<uint8_t>(b);
}

}  // namespace

float srgb_to_linear(float s) {
    return s <= 0.04045f ? s / 12.92f : std::pow((s + 0.055f) / 1.055f, 2.4f);
}

float linear_to_srgb(float l) {
    return l <= 0.0031308f ? l * 12.92f : 1.055f * std::pow(l, 1.0f / 2.4f) - 0.055f;
}

void write_png(const std::string& path, const GrayImage& img) {
    std::vector<uint8_t> bytes(img.size());
    for (size_t i = 0; i < img.size(); ++i) bytes[i] = to_byte(img.data[i]);
    write_png_bytes(path, bytes, img.width, img.height, PNG_COLOR_TYPE_GRAY);
}

GrayImage read_png_gray(const std::string& path) {
    int w, h;
    auto bytes = read_png_bytes(path, w, h, false);
    GrayImage img(w, h);
    for (size_t i = 0; i < bytes.size(); ++i) img.data[i] = static_cast<float>(bytes[i]) / 255.0f;
    return img;
}

void write_png(const std::string& path, const BinaryMask& mask) {
    std::vector<uint8_t> bytes(mask.size());
    for (size_t i = 0; i < mask.size(); ++i) bytes[i] = mask.bits[i] ? 255 : 0;
    write_png_bytes(path, bytes, mask.width, mask.height, PNG_COLOR_TYPE_GRAY);
}

BinaryMask read_png_mask(const std::string& path) {
    int w, h;
    auto bytes = read_png_bytes(path, w, h, false);
    BinaryMask mask(w, h);
    for (size_t i = 0; i < bytes.size(); ++i) mask.bits[i] = bytes[i] >= 128 ? 1 : 0;
    return mask;
}

void write_png_srgb(const std::string& path, const ColorImage& img) {
    std::vector<uint8_t> bytes(static_cast<size_t>(img.width) * img.height * 3);
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        for (int c = 0; c < 3; ++c) bytes[i * 3 + c] = to_byte(linear_to_srgb(img.pixels[i][c]));
    }
    write_png_bytes(path, bytes, img.width, img.height, PNG_COLOR_TYPE_RGB);
}

ColorImage read_png_srgb(const std::string& path) {
    int w, h;
    auto bytes = read_png_bytes(path, w, h, true);
    ColorImage img(w, h);
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        for (int c = 0; c < 3; ++c)
            img.pixels[i][c] = srgb_to_linear(static_cast<float>(bytes[i * 3 + c]) / 255.0f);
    }
    return img;
}

}  // namespace strokeplan
