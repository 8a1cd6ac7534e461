#include "strokeplan/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace strokeplan {

RasterResult stamp_disks(int width, int height, const std::vector<Vec2>& centers,
                         const std::vector<double>& radii, double opacity) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("stamp_disks: bad canvas");
    if (radii.size() != 1 && radii.size() != centers.size()) {
        throw std::invalid_argument("stamp_disks: radii must be shared or per-center");
    }
    RasterResult res{WeightMap(width, height), BinaryMask(width, height)};
    const float a = static_cast<float>(std::clamp(opacity, 0.0, 1.0));
    for (size_t i = 0; i < centers.size(); ++i) {
        const Vec2& c = centers[i];
        const double r = radii.size() == 1 ? radii[0] : radii[i];
        if (r <= 0.0) continue;
        const double rr = r * r;
        const int x_lo = std::max(0, static_cast<int>(std::ceil(c.x - r)));
        const int x_hi = std::min(width - 1, static_cast<int>(std::floor(c.x + r)));
        const int y_lo = std::max(0, static_cast<int>(std::ceil(c.y - r)));
        const int y_hi = std::min(height - 1, static_cast<int>(std::floor(c.y + r)));
        for (int y = y_lo; y <= y_hi; ++y) {
            const double dy = y - c.y;
            for (int x = x_lo; x <= x_hi; ++x) {
                const double dx = x - c.x;
                if (dx * dx + dy * dy <= rr) {
                    res.footprint.at(x, y) = 1;
                    res.alpha.at(x, y) = a;
                }
            }
        }
    }
    return res;
}

RasterResult rasterize_stroke(const StrokeAction& u, const StrokeColor& color, int width,
                              int height, const WidthLaw& law, int n_stamps,
                              double straight_bend_threshold) {
    if (n_stamps < 2) n_stamps = default_stamp_count(u, straight_bend_threshold);
    const auto centers = stamp_centers(u, n_stamps, straight_bend_threshold);
    const double r = force_to_radius(u.force, law);
    return stamp_disks(width, height, centers, {r}, color.a);
}

GrayImage composite(const GrayImage& base, const WeightMap& alpha_map, const StrokeColor& color) {
    if (base.width != alpha_map.width || base.height != alpha_map.height) {
        throw std::invalid_argument("composite: dimension mismatch");
    }
    GrayImage out(base.width, base.height);
    const float c = static_cast<float>(color.c);
    for (size_t i = 0; i < base.size(); ++i) {
        const float a = std::clamp(alpha_map.weights[i], 0.0f, 1.0f);
        out.data[i] = base.data[i] + a * (c - base.data[i]);
    }
    return out;
}

std::vector<double> min_sqdist_field(int width, int height, const std::vector<Vec2>& centers) {
    std::vector<double> field(static_cast<size_t>(width) * height,
                              std::numeric_limits<double>::infinity());
#pragma omp parallel for
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2& c : centers) {
                const double dx = x - c.x, dy = y - c.y;
                const double dd = dx * dx + dy * dy;
                if (dd < best) best = dd;
            }
            field[static_cast<size_t>(y) * width + x] = best;
        }
    }
    return field;
}

}  // namespace strokeplan
