#pragma once

#include <array>
#include <vector>

#include "strokeplan/image.hpp"

namespace strokeplan {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// The 6-parameter stroke control: start point, length, signed bend,
/// orientation, and normal force.
struct StrokeAction {
    double x0 = 0.0;        // pixels
    double y0 = 0.0;        // pixels
    double length = 0.0;    // pixels
    double bend = 0.0;      // signed, pixels
    double alpha_deg = 0.0; // in-plane orientation, degrees
    double force = 0.0;     // newtons

    std::array<double, 6> as_array() const { return {x0, y0, length, bend, alpha_deg, force}; }
    static StrokeAction from_array(const std::array<double, 6>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
};

/// Per-parameter clipping box. The force range reflects the sensor span;
/// the rest are patch-space planning bounds.
struct ActionBounds {
    std::array<double, 6> lo = {10.0, 10.0, 5.0, -15.0, 0.0, 0.1};
    std::array<double, 6> hi = {90.0, 90.0, 70.0, 15.0, 360.0, 4.0};

    double range(int i) const { return hi[i] - lo[i]; }
    bool contains(const StrokeAction& u, double tol = 1e-9) const;
};

/// Grayscale paint color with opacity; the RGBA triple is kept for reports.
struct StrokeColor {
    double c = 0.0;  // grayscale value in [0,1]
    double a = 1.0;  // opacity in [0,1]
    std::array<double, 4> rgba = {0, 0, 0, 1};
};

/// r(F) = r_min + k * F^gamma, non-decreasing in F for k >= 0.
struct WidthLaw {
    double r_min = 1.5;
    double k = 6.0;
    double gamma = 0.7;
};

StrokeAction clip_action(const StrokeAction& u, const ActionBounds& bounds);

/// Quadratic Bezier control points: q0 = p0, q1 = p0 + (l/2) t + b n,
/// q2 = p0 + l t with t = (cos a, sin a) and n = (-sin a, cos a).
std::array<Vec2, 3> bezier_control_points(const StrokeAction& u);

Vec2 bezier_point(const std::array<Vec2, 3>& q, double s);

double force_to_radius(double force, const WidthLaw& law);

/// Uniformly arc-length-spaced centerline samples. The centerline is the
/// quadratic Bezier when |bend| >= straight_bend_threshold, else the
/// straight chord; l = 0 degenerates to a single point at p0.
std::vector<Vec2> stamp_centers(const StrokeAction& u, int n_stamps,
                                double straight_bend_threshold);

/// Default stamp count: consecutive disks overlap at any radius >= 0.5.
int default_stamp_count(const StrokeAction& u, double straight_bend_threshold);

/// Bezier arc length by dense polyline accumulation.
double arc_length(const StrokeAction& u, double straight_bend_threshold);

constexpr double kStraightBendThreshold = 0.75;

}  // namespace strokeplan
