#include "strokeplan/stroke.hpp"

#include <algorithm>
#include <cmath>

namespace strokeplan {

namespace {
constexpr double kDegToRad = 0.017453292519943295;
constexpr int kPolylineSegments = 128;
}  // namespace

bool ActionBounds::contains(const StrokeAction& u, double tol) const {
    const auto a = u.as_array();
    for (int i = 0; i < 6; ++i) {
        if (a[i] < lo[i] - tol || a[i] > hi[i] + tol) return false;
    }
    return true;
}

StrokeAction clip_action(const StrokeAction& u, const ActionBounds& bounds) {
    auto a = u.as_array();
    for (int i = 0; i < 6; ++i) a[i] = std::clamp(a[i], bounds.lo[i], bounds.hi[i]);
    return StrokeAction::from_array(a);
}

std::array<Vec2, 3> bezier_control_points(const StrokeAction& u) {
    const double rad = u.alpha_deg * kDegToRad;
    const Vec2 t{std::cos(rad), std::sin(rad)};
    const Vec2 n{-std::sin(rad), std::cos(rad)};
    const Vec2 q0{u.x0, u.y0};
    const Vec2 q1{u.x0 + 0.5 * u.length * t.x + u.bend * n.x,
                  u.y0 + 0.5 * u.length * t.y + u.bend * n.y};
    const Vec2 q2{u.x0 + u.length * t.x, u.y0 + u.length * t.y};
    return {q0, q1, q2};
}

Vec2 bezier_point(const std::array<Vec2, 3>& q, double s) {
    const double w0 = (1 - s) * (1 - s), w1 = 2 * s * (1 - s), w2 = s * s;
    return {w0 * q[0].x + w1 * q[1].x + w2 * q[2].x, w0 * q[0].y + w1 * q[1].y + w2 * q[2].y};
}

double force_to_radius(double force, const WidthLaw& law) {
    return law.r_min + law.k * std::pow(force, law.gamma);
}

namespace {

// Dense centerline polyline; straight chord below the bend threshold.
std::vector<Vec2> polyline(const StrokeAction& u, double straight_bend_threshold) {
    const double rad = u.alpha_deg * kDegToRad;
    const Vec2 p0{u.x0, u.y0};
    if (u.length <= 0.0) return {p0};
    std::vector<Vec2> pts;
    pts.reserve(kPolylineSegments + 1);
    if (std::abs(u.bend) < straight_bend_threshold) {
        const Vec2 p1{u.x0 + u.length * std::cos(rad), u.y0 + u.length * std::sin(rad)};
        for (int i = 0; i <= kPolylineSegments; ++i) {
            const double s = static_cast<double>(i) / kPolylineSegments;
            pts.push_back({p0.x + s * (p1.x - p0.x), p0.y + s * (p1.y - p0.y)});
        }
    } else {
        const auto q = bezier_control_points(u);
        for (int i = 0; i <= kPolylineSegments; ++i) {
            pts.push_back(bezier_point(q, static_cast<double>(i) / kPolylineSegments));
        }
    }
    return pts;
}

std::vector<double> cumulative_length(const std::vector<Vec2>& pts) {
    std::vector<double> cum(pts.size(), 0.0);
    for (size_t i = 1; i < pts.size(); ++i) {
        const double dx = pts[i].x - pts[i - 1].x, dy = pts[i].y - pts[i - 1].y;
        cum[i] = cum[i - 1] + std::hypot(dx, dy);
    }
    return cum;
}

}  // namespace

double arc_length(const StrokeAction& u, double straight_bend_threshold) {
    const auto pts = polyline(u, straight_bend_threshold);
    if (pts.size() < 2) return 0.0;
    return cumulative_length(pts).back();
}

std::vector<Vec2> stamp_centers(const StrokeAction& u, int n_stamps,
                                double straight_bend_threshold) {
    const auto pts = polyline(u, straight_bend_threshold);
    if (pts.size() == 1) return pts;
    const auto cum = cumulative_length(pts);
    const double total = cum.back();
    if (total <= 0.0) return {pts.front()};

    n_stamps = std::max(2, n_stamps);
    std::vector<Vec2> centers;
    centers.reserve(n_stamps);
    size_t seg = 0;
    for (int i = 0; i < n_stamps; ++i) {
        const double target = total * static_cast<double>(i) / (n_stamps - 1);
        while (seg + 1 < cum.size() - 1 && cum[seg + 1] < target) ++seg;
        const double span = cum[seg + 1] - cum[seg];
        const double f = span > 0.0 ? (target - cum[seg]) / span : 0.0;
        centers.push_back({pts[seg].x + f * (pts[seg + 1].x - pts[seg].x),
                           pts[seg].y + f * (pts[seg + 1].y - pts[seg].y)});
    }
    return centers;
}

int default_stamp_count(const StrokeAction& u, double straight_bend_threshold) {
    const double len = arc_length(u, straight_bend_threshold);
    return std::max(2, static_cast<int>(std::ceil(2.0 * len)));
}

}  // namespace strokeplan
