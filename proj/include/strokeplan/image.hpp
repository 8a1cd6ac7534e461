#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace strokeplan {

/// Single-channel image with row-major intensities in [0,1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    GrayImage() = default;
    GrayImage(int w, int h, float fill = 0.0f)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("GrayImage: non-positive dimensions");
    }

    float& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    float at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    size_t size() const { return data.size(); }
    bool same_shape(const GrayImage& o) const { return width == o.width && height == o.height; }

    bool operator==(const GrayImage& o) const = default;
};

/// Row-major boolean mask. Dimensions match the image it annotates.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;  // 0 or 1

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false)
        : width(w), height(h), bits(static_cast<size_t>(w) * h, fill ? 1 : 0) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("BinaryMask: non-positive dimensions");
    }

    uint8_t& at(int x, int y) { return bits[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x]; }
    bool test(int x, int y) const { return bits[static_cast<size_t>(y) * width + x] != 0; }
    size_t size() const { return bits.size(); }

    size_t count() const {
        size_t n = 0;
        for (uint8_t b : bits) n += b;
        return n;
    }
    bool empty() const { return count() == 0; }

    bool operator==(const BinaryMask& o) const = default;
};

/// Row-major non-negative per-pixel weights.
struct WeightMap {
    int width = 0;
    int height = 0;
    std::vector<float> weights;

    WeightMap() = default;
    WeightMap(int w, int h, float fill = 0.0f)
        : width(w), height(h), weights(static_cast<size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("WeightMap: non-positive dimensions");
    }

    float& at(int x, int y) { return weights[static_cast<size_t>(y) * width + x]; }
    float at(int x, int y) const { return weights[static_cast<size_t>(y) * width + x]; }
    size_t size() const { return weights.size(); }
};

/// Three-channel linear-RGB image, values in [0,1] per channel.
struct ColorImage {
    int width = 0;
    int height = 0;
    std::vector<std::array<float, 3>> pixels;

    ColorImage() = default;
    ColorImage(int w, int h, std::array<float, 3> fill = {0, 0, 0})
        : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("ColorImage: non-positive dimensions");
    }

    std::array<float, 3>& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    const std::array<float, 3>& at(int x, int y) const {
        return pixels[static_cast<size_t>(y) * width + x];
    }
};

/// Replicate a grayscale image into three identical channels.
ColorImage to_color(const GrayImage& g);

/// Luminance-weighted grayscale of a linear-RGB image.
GrayImage to_gray(const ColorImage& c);

/// Snap intensities to the 8-bit grid (what a camera observation would store).
GrayImage quantize8(const GrayImage& img);

}  // namespace strokeplan
