#pragma once

#include "knotspec/vec3.hpp"

namespace knotspec {

/// Closest points between segments [p0,p1] and [q0,q1].
struct SegmentPair {
    double distance = 0;
    double s = 0; ///< parameter on the first segment
    double t = 0; ///< parameter on the second segment
};

SegmentPair segment_segment(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

/// Parameter of the point of [a,b] closest to p, clamped to [0,1].
double point_segment_parameter(const Vec3& p, const Vec3& a, const Vec3& b);

/// Distance from point p to the infinite line through `origin` with unit `direction`.
double point_line_distance(const Vec3& p, const Vec3& origin, const Vec3& direction);

} // namespace knotspec
