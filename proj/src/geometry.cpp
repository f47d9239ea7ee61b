#include "dpsm/geometry.hpp"

#include <cmath>

namespace dpsm {

DirectedPoint apply_transform(const RigidTransform& t, const DirectedPoint& p) noexcept {
    const double c = std::cos(t.theta);
    const double s = std::sin(t.theta);
    return {t.tx + c * p.x - s * p.y, t.ty + s * p.x + c * p.y, p.theta + t.theta};
}

PointSet apply_transform(const RigidTransform& t, const PointSet& points) {
    PointSet out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(apply_transform(t, p));
    return out;
}

RigidTransform compute_transform(const DirectedPoint& p, const DirectedPoint& q) noexcept {
    const double theta = wrap_angle(q.theta - p.theta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {theta, q.x - (p.x * c - p.y * s), q.y - (p.x * s + p.y * c)};
}

}  // namespace dpsm
