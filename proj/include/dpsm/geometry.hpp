#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace dpsm {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2pi).
inline double wrap_angle(double radians) noexcept {
    double w = std::fmod(radians, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    // A tiny negative input plus 2pi can round up to exactly 2pi.
    if (w >= kTwoPi) w = 0.0;
    return w;
}

/// Shortest rotation between two angles, in [0, pi].
inline double angular_distance(double a, double b) noexcept {
    const double d = std::fmod(std::fabs(a - b), kTwoPi);
    return std::fmin(d, kTwoPi - d);
}

/// A planar location carrying an orientation (e.g. a minutia and its ridge direction).
struct DirectedPoint {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  ///< radians, [0, 2pi)

    DirectedPoint() = default;
    DirectedPoint(double x_, double y_, double theta_) : x(x_), y(y_), theta(wrap_angle(theta_)) {}

    friend bool operator==(const DirectedPoint&, const DirectedPoint&) = default;
};

using PointSet = std::vector<DirectedPoint>;

/// Rotation about the origin by `theta` followed by translation (tx, ty).
struct RigidTransform {
    double theta = 0.0;  ///< radians, [0, 2pi)
    double tx = 0.0;
    double ty = 0.0;

    RigidTransform() = default;
    RigidTransform(double theta_, double tx_, double ty_) : theta(wrap_angle(theta_)), tx(tx_), ty(ty_) {}

    static RigidTransform identity() { return {}; }

    friend bool operator==(const RigidTransform&, const RigidTransform&) = default;
};

/// Maps the location by R(theta)(x, y) + t and rotates the orientation by theta.
DirectedPoint apply_transform(const RigidTransform& t, const DirectedPoint& p) noexcept;

PointSet apply_transform(const RigidTransform& t, const PointSet& points);

/// The unique rigid transform carrying p onto q, orientation included.
RigidTransform compute_transform(const DirectedPoint& p, const DirectedPoint& q) noexcept;

inline double squared_distance(const DirectedPoint& a, const DirectedPoint& b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

}  // namespace dpsm
