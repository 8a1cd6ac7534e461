#include "strokeplan/morphology.hpp"

#include <array>
#include <stdexcept>

namespace strokeplan {

namespace {

// 8-neighborhood in the Zhang-Suen order p2..p9: N, NE, E, SE, S, SW, W, NW.
constexpr std::array<std::pair<int, int>, 8> kNbr = {
    {{0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}}};

inline bool get(const BinaryMask& m, int x, int y) {
    return x >= 0 && x < m.width && y >= 0 && y < m.height && m.test(x, y);
}

// Number of 0->1 transitions around the ordered neighborhood.
int transitions(const std::array<bool, 8>& p) {
    int a = 0;
    for (int i = 0; i < 8; ++i) {
        if (!p[i] && p[(i + 1) % 8]) ++a;
    }
    return a;
}

}  // namespace

int neighbor_count(const BinaryMask& mask, int x, int y) {
    int b = 0;
    for (const auto& [dx, dy] : kNbr) b += get(mask, x + dx, y + dy) ? 1 : 0;
    return b;
}

std::vector<int> label_components(const BinaryMask& mask, int& n_components) {
    const int w = mask.width, h = mask.height;
    std::vector<int> labels(static_cast<size_t>(w) * h, -1);
    std::vector<std::pair<int, int>> stack;
    n_components = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.test(x, y) || labels[static_cast<size_t>(y) * w + x] >= 0) continue;
            const int id = n_components++;
            stack.push_back({x, y});
            labels[static_cast<size_t>(y) * w + x] = id;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                for (const auto& [dx, dy] : kNbr) {
                    const int nx = cx + dx, ny = cy + dy;
                    if (get(mask, nx, ny) && labels[static_cast<size_t>(ny) * w + nx] < 0) {
                        labels[static_cast<size_t>(ny) * w + nx] = id;
                        stack.push_back({nx, ny});
                    }
                }
            }
        }
    }
    return labels;
}

int count_components(const BinaryMask& mask) {
    int n = 0;
    label_components(mask, n);
    return n;
}

BinaryMask largest_component(const BinaryMask& mask) {
    int n = 0;
    auto labels = label_components(mask, n);
    if (n <= 1) return mask;
    std::vector<size_t> sizes(n, 0);
    for (int l : labels) {
        if (l >= 0) ++sizes[l];
    }
    int best = 0;
    for (int i = 1; i < n; ++i) {
        if (sizes[i] > sizes[best]) best = i;
    }
    BinaryMask out(mask.width, mask.height);
    for (size_t i = 0; i < out.size(); ++i) out.bits[i] = labels[i] == best ? 1 : 0;
    return out;
}

SkeletonResult skeletonize(const BinaryMask& mask) {
    if (mask.empty()) throw std::invalid_argument("skeletonize: empty mask");
    const int w = mask.width, h = mask.height;
    BinaryMask img = mask;

    std::vector<size_t> marked;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int sub = 0; sub < 2; ++sub) {
            marked.clear();
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    if (!img.test(x, y)) continue;
                    std::array<bool, 8> p;
                    int b = 0;
                    for (int i = 0; i < 8; ++i) {
                        p[i] = get(img, x + kNbr[i].first, y + kNbr[i].second);
                        b += p[i] ? 1 : 0;
                    }
                    if (b < 2 || b > 6) continue;
                    if (transitions(p) != 1) continue;
                    // p2=N p4=E p6=S p8=W at indices 0,2,4,6.
                    const bool n = p[0], e = p[2], s = p[4], wst = p[6];
                    if (sub == 0) {
                        if ((n && e && s) || (e && s && wst)) continue;
                    } else {
                        if ((n && e && wst) || (n && s && wst)) continue;
                    }
                    marked.push_back(static_cast<size_t>(y) * w + x);
                }
            }
            if (marked.empty()) continue;

            // A batch may not erase a whole component (an isolated 2x2 block
            // would otherwise vanish). Keep the first pixel of any component
            // that is fully marked.
            int n_comp = 0;
            auto labels = label_components(img, n_comp);
            std::vector<size_t> comp_size(n_comp, 0), comp_marked(n_comp, 0);
            for (size_t i = 0; i < img.size(); ++i) {
                if (labels[i] >= 0) ++comp_size[labels[i]];
            }
            for (size_t idx : marked) ++comp_marked[labels[idx]];
            std::vector<bool> keep_one(n_comp, false);
            for (int c = 0; c < n_comp; ++c) keep_one[c] = comp_marked[c] == comp_size[c];

            for (size_t idx : marked) {
                const int c = labels[idx];
                if (keep_one[c]) {
                    keep_one[c] = false;  // spare the first marked pixel of this component
                    continue;
                }
                img.bits[idx] = 0;
                changed = true;
            }
        }
    }

    SkeletonResult res;
    res.skeleton = std::move(img);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (res.skeleton.test(x, y) && neighbor_count(res.skeleton, x, y) == 1) {
                res.endpoints.emplace_back(x, y);
            }
        }
    }
    return res;
}

}  // namespace strokeplan
