#pragma once

#include "strokeplan/image.hpp"

namespace strokeplan {

// OpenMP-parallel image kernels. Each has a serial reference twin in
// strokeplan::serial used by the test suite and the benchmark harness.
// Parallel reductions accumulate per-row partials that are summed in a
// fixed order, so results do not depend on the thread count.

/// Weighted mean absolute difference: (1/sum w) * sum w_i |pred_i - target_i|.
/// Throws on dimension mismatch or zero total weight.
double weighted_l1(const GrayImage& pred, const GrayImage& target, const WeightMap& weights);

/// Unweighted mean absolute difference over all pixels.
double mean_l1(const GrayImage& a, const GrayImage& b);

/// Pixels where |before-after| > threshold, dilated by a disk of the given
/// radius (radius 0 = no dilation).
BinaryMask change_mask(const GrayImage& before, const GrayImage& after, float threshold,
                       int dilation_radius);

BinaryMask dilate_disk(const BinaryMask& mask, int radius);

/// Exact Euclidean distance to the nearest set pixel (squared distances
/// computed by the two-pass lower-envelope transform). Unset everywhere
/// yields +inf entries.
std::vector<float> distance_transform(const BinaryMask& mask);

/// Weight 1 on mask pixels, max(floor, 1 - decay*dist) outside. Strictly
/// positive everywhere; empty mask yields uniform floor weights.
WeightMap stroke_weights(const BinaryMask& mask, float decay, float floor = 0.05f);

/// Uniform weight map of 1s.
WeightMap uniform_weights(int width, int height);

/// Crop a source_side x source_side window centered near `center` (window
/// shifted to stay within bounds) and bilinearly resample to out_side^2.
GrayImage crop_resize(const GrayImage& image, float cx, float cy, int source_side,
                      int out_side = 100);

/// Intersection-over-union of two masks; 1.0 when both are empty.
double mask_iou(const BinaryMask& a, const BinaryMask& b);

namespace serial {

double weighted_l1(const GrayImage& pred, const GrayImage& target, const WeightMap& weights);
double mean_l1(const GrayImage& a, const GrayImage& b);
BinaryMask change_mask(const GrayImage& before, const GrayImage& after, float threshold,
                       int dilation_radius);
BinaryMask dilate_disk(const BinaryMask& mask, int radius);
std::vector<float> distance_transform(const BinaryMask& mask);
WeightMap stroke_weights(const BinaryMask& mask, float decay, float floor = 0.05f);

}  // namespace serial

}  // namespace strokeplan
