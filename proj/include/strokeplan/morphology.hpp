#pragma once

#include <utility>
#include <vector>

#include "strokeplan/image.hpp"

namespace strokeplan {

struct SkeletonResult {
    BinaryMask skeleton;
    std::vector<std::pair<int, int>> endpoints;  // skeleton pixels with 8-neighborhood degree 1
};

/// Two-subiteration thinning (Zhang-Suen neighborhood rule) down to a
/// 1-pixel-wide centerline. A deletion batch never removes the last pixel
/// of a connected component, so the component count of the skeleton equals
/// that of the input. Throws on an empty mask.
SkeletonResult skeletonize(const BinaryMask& mask);

/// 8-connected component count.
int count_components(const BinaryMask& mask);

/// 8-connected component labels, -1 for background. Labels are assigned in
/// raster-scan order of component discovery.
std::vector<int> label_components(const BinaryMask& mask, int& n_components);

/// Largest 8-connected component of a mask (empty input stays empty).
BinaryMask largest_component(const BinaryMask& mask);

/// Number of set 8-neighbors of (x, y).
int neighbor_count(const BinaryMask& mask, int x, int y);

}  // namespace strokeplan
