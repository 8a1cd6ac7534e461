#pragma once

#include <string>

#include "strokeplan/image.hpp"

namespace strokeplan {

// 8-bit single-channel PNG, intensity = round(255*v).
void write_png(const std::string& path, const GrayImage& img);
GrayImage read_png_gray(const std::string& path);

// Mask as 8-bit PNG with 0/255 values.
void write_png(const std::string& path, const BinaryMask& mask);
BinaryMask read_png_mask(const std::string& path);

// 8-bit RGB PNG. Values pass through an sRGB transfer curve: ColorImage is
// linear RGB, files store standard sRGB-encoded bytes.
void write_png_srgb(const std::string& path, const ColorImage& img);
ColorImage read_png_srgb(const std::string& path);

// sRGB piecewise transfer curve.
float srgb_to_linear(float s);
float linear_to_srgb(float l);

}  // namespace strokeplan
