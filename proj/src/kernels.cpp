#include "strokeplan/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strokeplan {

namespace {

constexpr double kEdtInf = 1e12;  // stands in for +inf; real squared distances stay far below

void require_same_shape(int w1, int h1, int w2, int h2, const char* op) {
    if (w1 != w2 || h1 != h2) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
    }
}

std::vector<std::pair<int, int>> disk_offsets(int radius) {
    std::vector<std::pair<int, int>> offs;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy <= radius * radius) offs.emplace_back(dx, dy);
        }
    }
    return offs;
}

// 1-D squared distance transform (lower envelope of parabolas).
void edt_1d(const double* f, double* d, int n, int* v, double* z) {
    int k = 0;
    v[0] = 0;
    z[0] = -kEdtInf;
    z[1] = kEdtInf;
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s <= z[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kEdtInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = double(q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

template <bool Parallel>
std::vector<float> distance_transform_impl(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    std::vector<double> tmp(static_cast<size_t>(w) * h);

    // Column pass: squared vertical distance to the nearest set pixel.
#pragma omp parallel for if (Parallel)
    for (int x = 0; x < w; ++x) {
        std::vector<double> f(h), d(h), z(h + 1);
        std::vector<int> v(h);
        for (int y = 0; y < h; ++y) f[y] = mask.test(x, y) ? 0.0 : kEdtInf;
        edt_1d(f.data(), d.data(), h, v.data(), z.data());
        for (int y = 0; y < h; ++y) tmp[static_cast<size_t>(y) * w + x] = d[y];
    }

    std::vector<float> out(static_cast<size_t>(w) * h);
#pragma omp parallel for if (Parallel)
    for (int y = 0; y < h; ++y) {
        std::vector<double> d(w), z(w + 1);
        std::vector<int> v(w);
        edt_1d(tmp.data() + static_cast<size_t>(y) * w, d.data(), w, v.data(), z.data());
        for (int x = 0; x < w; ++x) {
            out[static_cast<size_t>(y) * w + x] =
                static_cast<float>(std::sqrt(std::min(d[x], kEdtInf)));
        }
    }
    return out;
}

template <bool Parallel>
BinaryMask dilate_disk_impl(const BinaryMask& mask, int radius) {
    if (radius <= 0) return mask;
    const int w = mask.width, h = mask.height;
    const auto offs = disk_offsets(radius);
    BinaryMask out(w, h);
#pragma omp parallel for if (Parallel)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            uint8_t set = 0;
            for (const auto& [dx, dy] : offs) {
                const int sx = x + dx, sy = y + dy;
                if (sx >= 0 && sx < w && sy >= 0 && sy < h && mask.test(sx, sy)) {
                    set = 1;
                    break;
                }
            }
            out.at(x, y) = set;
        }
    }
    return out;
}

WeightMap stroke_weights_from_dist(const BinaryMask& mask, const std::vector<float>& dist,
                                   float decay, float floor) {
    WeightMap w(mask.width, mask.height);
    if (mask.empty()) {
        std::fill(w.weights.begin(), w.weights.end(), floor);
        return w;
    }
    for (size_t i = 0; i < w.size(); ++i) {
        w.weights[i] = mask.bits[i] ? 1.0f : std::max(floor, 1.0f - decay * dist[i]);
    }
    return w;
}

}  // namespace

double weighted_l1(const GrayImage& pred, const GrayImage& target, const WeightMap& weights) {
    require_same_shape(pred.width, pred.height, target.width, target.height, "weighted_l1");
    require_same_shape(pred.width, pred.height, weights.width, weights.height, "weighted_l1");
    const int h = pred.height, w = pred.width;
    std::vector<double> row_num(h), row_den(h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        double num = 0.0, den = 0.0;
        const float* p = pred.data.data() + static_cast<size_t>(y) * w;
        const float* t = target.data.data() + static_cast<size_t>(y) * w;
        const float* ww = weights.weights.data() + static_cast<size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            num += static_cast<double>(ww[x]) * std::abs(static_cast<double>(p[x]) - t[x]);
            den += ww[x];
        }
        row_num[y] = num;
        row_den[y] = den;
    }
    double num = 0.0, den = 0.0;
    for (int y = 0; y < h; ++y) {
        num += row_num[y];
        den += row_den[y];
    }
    if (den <= 0.0) throw std::invalid_argument("weighted_l1: zero total weight");
    return num / den;
}

double mean_l1(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a.width, a.height, b.width, b.height, "mean_l1");
    const int h = a.height, w = a.width;
    std::vector<double> row_sum(h);
#pragma omp parallel for
    for (int y = 0; y < h; ++y) {
        double s = 0.0;
        const float* pa = a.data.data() + static_cast<size_t>(y) * w;
        const float* pb = b.data.data() + static_cast<size_t>(y) * w;
        for (int x = 0; x < w; ++x) s += std::abs(static_cast<double>(pa[x]) - pb[x]);
        row_sum[y] = s;
    }
    double s = 0.0;
    for (int y = 0; y < h; ++y) s += row_sum[y];
    return s / (static_cast<double>(w) * h);
}

BinaryMask change_mask(const GrayImage& before, const GrayImage& after, float threshold,
                       int dilation_radius) {
    require_same_shape(before.width, before.height, after.width, after.height, "change_mask");
    BinaryMask diff(before.width, before.height);
#pragma omp parallel for
    for (int y = 0; y < before.height; ++y) {
        for (int x = 0; x < before.width; ++x) {
            diff.at(x, y) = std::abs(before.at(x, y) - after.at(x, y)) > threshold ? 1 : 0;
        }
    }
    return dilate_disk_impl<true>(diff, dilation_radius);
}

BinaryMask dilate_disk(const BinaryMask& mask, int radius) {
    return dilate_disk_impl<true>(mask, radius);
}

std::vector<float> distance_transform(const BinaryMask& mask) {
    return distance_transform_impl<true>(mask);
}

WeightMap stroke_weights(const BinaryMask& mask, float decay, float floor) {
    return stroke_weights_from_dist(mask, distance_transform_impl<true>(mask), decay, floor);
}

WeightMap uniform_weights(int width, int height) { return WeightMap(width, height, 1.0f); }

GrayImage crop_resize(const GrayImage& image, float cx, float cy, int source_side, int out_side) {
    if (cx < 0 || cx >= image.width || cy < 0 || cy >= image.height) {
        throw std::invalid_argument("crop_resize: center outside image");
    }
    int side = std::min({source_side, image.width, image.height});
    if (side < 1) side = 1;
    float x0 = std::clamp(cx - side * 0.5f, 0.0f, static_cast<float>(image.width - side));
    float y0 = std::clamp(cy - side * 0.5f, 0.0f, static_cast<float>(image.height - side));
    x0 = std::round(x0);
    y0 = std::round(y0);

    GrayImage out(out_side, out_side);
    const float scale = static_cast<float>(side) / out_side;
    for (int j = 0; j < out_side; ++j) {
        for (int i = 0; i < out_side; ++i) {
            const float sx = x0 + (i + 0.5f) * scale - 0.5f;
            const float sy = y0 + (j + 0.5f) * scale - 0.5f;
            const int ix = static_cast<int>(std::floor(sx));
            const int iy = static_cast<int>(std::floor(sy));
            const float fx = sx - ix, fy = sy - iy;
            auto sample = [&](int x, int y) {
                x = std::clamp(x, 0, image.width - 1);
                y = std::clamp(y, 0, image.height - 1);
                return image.at(x, y);
            };
            const float v = (1 - fx) * (1 - fy) * sample(ix, iy) +
                            fx * (1 - fy) * sample(ix + 1, iy) +
                            (1 - fx) * fy * sample(ix, iy + 1) + fx * fy * sample(ix + 1, iy + 1);
            out.at(i, j) = std::clamp(v, 0.0f, 1.0f);
        }
    }
    return out;
}

double mask_iou(const BinaryMask& a, const BinaryMask& b) {
    require_same_shape(a.width, a.height, b.width, b.height, "mask_iou");
    size_t inter = 0, uni = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        const bool ba = a.bits[i] != 0, bb = b.bits[i] != 0;
        inter += (ba && bb) ? 1 : 0;
        uni += (ba || bb) ? 1 : 0;
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

namespace serial {

double weighted_l1(const GrayImage& pred, const GrayImage& target, const WeightMap& weights) {
    require_same_shape(pred.width, pred.height, target.width, target.height, "weighted_l1");
    require_same_shape(pred.width, pred.height, weights.width, weights.height, "weighted_l1");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        num += static_cast<double>(weights.weights[i]) *
               std::abs(static_cast<double>(pred.data[i]) - target.data[i]);
        den += weights.weights[i];
    }
    if (den <= 0.0) throw std::invalid_argument("weighted_l1: zero total weight");
    return num / den;
}

double mean_l1(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a.width, a.height, b.width, b.height, "mean_l1");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        s += std::abs(static_cast<double>(a.data[i]) - b.data[i]);
    }
    return s / static_cast<double>(a.size());
}

BinaryMask change_mask(const GrayImage& before, const GrayImage& after, float threshold,
                       int dilation_radius) {
    require_same_shape(before.width, before.height, after.width, after.height, "change_mask");
    BinaryMask diff(before.width, before.height);
    for (size_t i = 0; i < diff.size(); ++i) {
        diff.bits[i] = std::abs(before.data[i] - after.data[i]) > threshold ? 1 : 0;
    }
    return dilate_disk_impl<false>(diff, dilation_radius);
}

BinaryMask dilate_disk(const BinaryMask& mask, int radius) {
    return dilate_disk_impl<false>(mask, radius);
}

std::vector<float> distance_transform(const BinaryMask& mask) {
    return distance_transform_impl<false>(mask);
}

WeightMap stroke_weights(const BinaryMask& mask, float decay, float floor) {
    return stroke_weights_from_dist(mask, distance_transform_impl<false>(mask), decay, floor);
}

}  // namespace serial

}  // namespace strokeplan
