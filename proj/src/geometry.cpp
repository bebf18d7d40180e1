#include "knotspec/geometry.hpp"

#include <algorithm>

namespace knotspec {

double point_segment_parameter(const Vec3& p, const Vec3& a, const Vec3& b)
{
    const Vec3 d = b - a;
    const double dd = dot(d, d);
    if (dd == 0) return 0;
    return std::clamp(dot(p - a, d) / dd, 0.0, 1.0);
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b)
{
    const double t = point_segment_parameter(p, a, b);
    return distance(p, a + (b - a) * t);
}

double point_line_distance(const Vec3& p, const Vec3& origin, const Vec3& direction)
{
    return norm(cross(p - origin, direction));
}

// Ericson, Real-Time Collision Detection, 5.1.9, with the degenerate
// branches kept because subdivided curves produce parallel edge pairs.
SegmentPair segment_segment(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1)
{
    const Vec3 d1 = p1 - p0;
    const Vec3 d2 = q1 - q0;
    const Vec3 r = p0 - q0;
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);
    double s = 0, t = 0;
    constexpr double eps = 1e-300;
    if (a <= eps && e <= eps) {
        s = t = 0;
    } else if (a <= eps) {
        s = 0;
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= eps) {
            t = 0;
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            s = denom > 1e-14 * a * e ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0) {
                t = 0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1) {
                t = 1;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    SegmentPair out;
    out.s = s;
    out.t = t;
    out.distance = distance(p0 + d1 * s, q0 + d2 * t);
    if (a > eps && e > eps) {
        // Parallel segments: the single candidate above may miss the true
        // minimum, so also try the four endpoint projections.
        auto consider = [&](double ss, double tt) {
            const double dist = distance(p0 + d1 * ss, q0 + d2 * tt);
            if (dist < out.distance) out = {dist, ss, tt};
        };
        consider(0, point_segment_parameter(p0, q0, q1));
        consider(1, point_segment_parameter(p1, q0, q1));
        consider(point_segment_parameter(q0, p0, p1), 0);
        consider(point_segment_parameter(q1, p0, p1), 1);
    }
    return out;
}

} // namespace knotspec
