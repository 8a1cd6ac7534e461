#pragma once

#include "strokeplan/image.hpp"
#include "strokeplan/stroke.hpp"

namespace strokeplan {

struct RasterResult {
    WeightMap alpha;      // opacity on stamped pixels, 0 elsewhere
    BinaryMask footprint; // alpha > 0
};

/// Stamp filled disks at the given centers. A pixel (x, y) is covered when
/// (x-cx)^2 + (y-cy)^2 <= r^2 for some stamp; stamps are clipped at canvas
/// borders. radii holds either one entry (shared) or one per center.
RasterResult stamp_disks(int width, int height, const std::vector<Vec2>& centers,
                         const std::vector<double>& radii, double opacity);

/// Disk-stamped stroke footprint: uniformly arc-length-spaced centers along
/// the centerline, disk radius from the width law. n_stamps < 2 selects the
/// default density (consecutive disks overlap at any radius >= 0.5).
RasterResult rasterize_stroke(const StrokeAction& u, const StrokeColor& color, int width,
                              int height, const WidthLaw& law, int n_stamps = 0,
                              double straight_bend_threshold = kStraightBendThreshold);

/// Per-pixel convex combination I = B(1-A) + cA with A = clip(alpha, 0, 1).
GrayImage composite(const GrayImage& base, const WeightMap& alpha_map, const StrokeColor& color);

/// Per-pixel min squared distance to the stamp centers. Thresholding this
/// field at r^2 reproduces stamp_disks coverage exactly for any radius.
std::vector<double> min_sqdist_field(int width, int height, const std::vector<Vec2>& centers);

}  // namespace strokeplan
