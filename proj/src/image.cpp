#include "strokeplan/image.hpp"

#include <cmath>

namespace strokeplan {

ColorImage to_color(const GrayImage& g) {
    ColorImage c(g.width, g.height);
    for (size_t i = 0; i < g.size(); ++i) {
        c.pixels[i] = {g.data[i], g.data[i], g.data[i]};
    }
    return c;
}

GrayImage to_gray(const ColorImage& c) {
    GrayImage g(c.width, c.height);
    for (size_t i = 0; i < c.pixels.size(); ++i) {
        const auto& p = c.pixels[i];
        g.data[i] = 0.2126f * p[0] + 0.7152f * p[1] + 0.0722f * p[2];
    }
    return g;
}

GrayImage quantize8(const GrayImage& img) {
    GrayImage out(img.width, img.height);
    for (size_t i = 0; i < img.size(); ++i) {
        int v = static_cast<int>(std::lround(255.0f * img.data[i]));
        if (v < 0) v = 0;
        if (v > 255) v = 255;
        out.data[i] = static_cast<float>(v) / 255.0f;
    }
    return out;
}

}  // namespace strokeplan
