#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "knotspec/curve.hpp"
#include "knotspec/geometry.hpp"
#include "knotspec/secants.hpp"

namespace knotspec {

namespace {


double line_line_gap(const Vec3& a0, const Vec3& da, const Vec3& b0, const Vec3& db)
{
    const Vec3 n = cross(da, db);
    const double nn = norm(n);
    if (nn <= 1e-12 * norm(da) * norm(db)) return norm(cross(b0 - a0, da)) / norm(da); // parallel
    return std::abs(dot(b0 - a0, n)) / nn;
}

void record(GenericityCondition& c, double residual, double tol, std::vector<std::size_t> who)
{
    c.residual = std::min(c.residual, residual);
    if (residual <= tol) {
        c.pass = false;
        c.offenders.push_back(std::move(who));
    }
}

// (i) For pairwise skew edges e1, e2, e3 the lines meeting all three sweep a
// doubly-ruled quadric H. A point p lies on H iff the unique line through p
// meeting L1 and L2 also meets L3; the residual is the distance between that
// line and L3.
void check_ruled(const PolyCurve& c, double tol, GenericityCondition& out)
{
    const std::size_t ne = c.edge_count(), nv = c.vertex_count();
    auto start = [&](std::size_t e) { return c.edge_start(e); };
    auto dir = [&](std::size_t e) { return c.edge_end(e) - c.edge_start(e); };
    auto skew = [&](std::size_t a, std::size_t b) {
        return !c.adjacent_edges(a, b) && line_line_gap(start(a), dir(a), start(b), dir(b)) > tol;
    };
    for (std::size_t i = 0; i < ne; ++i)
        for (std::size_t j = i + 1; j < ne; ++j) {
            if (!skew(i, j)) continue;
            for (std::size_t k = j + 1; k < ne; ++k) {
                if (!skew(i, k) || !skew(j, k)) continue;
                const std::size_t ends[6] = {i, (i + 1) % nv, j, (j + 1) % nv, k, (k + 1) % nv};
                for (std::size_t p = 0; p < nv; ++p) {
                    if (std::find(std::begin(ends), std::end(ends), p) != std::end(ends)) continue;
                    const Vec3& x = c.vertex(p);
                    const Vec3 n1 = cross(start(i) - x, dir(i));
                    const Vec3 n2 = cross(start(j) - x, dir(j));
                    const Vec3 m = cross(n1, n2);
                    double r;
                    if (norm(m) <= 1e-14 * norm(n1) * norm(n2) || norm(n1) <= tol * norm(dir(i)) ||
                        norm(n2) <= tol * norm(dir(j))) {
                        // x sits on L1 or L2, which lie in H.
                        r = std::min(point_line_distance(x, start(i), normalized(dir(i))),
                                     point_line_distance(x, start(j), normalized(dir(j))));
                    } else {
                        r = line_line_gap(x, m, start(k), dir(k));
                    }
                    record(out, r, tol, {i, j, k, p});
                }
            }
        }
    out.detail = "vertex distance to the quadric through three skew edges";
}

double segment_line_distance(const Vec3& a, const Vec3& b, const Vec3& o, const Vec3& d)
{
    const Vec3 v = b - a;
    const Vec3 w0 = a - o;
    const double bb = dot(d, v), c = dot(v, v), e = dot(v, w0), dd = dot(d, w0);
    const double denom = c - bb * bb;
    if (denom > 1e-14 * c) {
        const double mu = (bb * dd - e) / denom;
        if (mu >= 0 && mu <= 1) {
            const Vec3 p = a + v * mu;
            return point_line_distance(p, o, d);
        }
    }
    return std::min(point_line_distance(a, o, d), point_line_distance(b, o, d));
}

// (ii) No line meets five edges, and quadrisecants are isolated.
void check_quintisecants(const PolyCurve& c, double tol, GenericityCondition& out)
{
    QuadrisecantOptions opt;
    opt.tol = tol / c.diameter();
    const QuadrisecantReport rep = find_quadrisecants(c, opt);
    for (const auto& quad : rep.degenerate) record(out, 0.0, tol, {quad[0], quad[1], quad[2], quad[3]});
    for (const Quadrisecant& q : rep.secants) {
        for (std::size_t e = 0; e < c.edge_count(); ++e) {
            bool skip = false;
            for (std::size_t f : q.edges)
                if (e == f || c.adjacent_edges(e, f)) skip = true;
            if (skip) continue;
            const double r = segment_line_distance(c.edge_start(e), c.edge_end(e), q.point, q.direction);
            record(out, r, tol, {q.edges[0], q.edges[1], q.edges[2], q.edges[3], e});
        }
    }
    out.detail = "distance from quadrisecant lines to a fifth edge; non-isolated families count as 0";
}

struct Arc {
    double start = 0, length = 0; ///< angles mod pi
    double radius = 0;            ///< nearest distance to the vertex
    std::size_t edge = 0;
};

double mod_pi(double x)
{
    x = std::fmod(x, std::numbers::pi);
    return x < 0 ? x + std::numbers::pi : x;
}

// (iii) No line through a vertex, inside its osculating plane, meets two
// further edges. Each non-incident edge meets the plane in a point (or lies
// in it); lines through the vertex are directions mod pi, so a trisecant is
// an overlap of the direction arcs of two edges.
void check_osculating(const PolyCurve& c, double tol, GenericityCondition& out)
{
    const std::size_t nv = c.vertex_count(), ne = c.edge_count();
    for (std::size_t i = 0; i < nv; ++i) {
        if (!c.closed() && (i == 0 || i + 1 == nv)) continue;
        const Vec3& x = c.vertex(i);
        const Vec3 prev = c.vertex((i + nv - 1) % nv), next = c.vertex((i + 1) % nv);
        const Vec3 raw = cross(prev - x, next - x);
        if (norm(raw) <= 1e-12 * distance(prev, x) * distance(next, x)) {
            record(out, 0.0, tol, {i});
            continue;
        }
        const Vec3 n = normalized(raw);
        const Vec3 e1 = normalized(next - x);
        const Vec3 e2 = cross(n, e1);
        const std::size_t in_edge = (i + ne - 1) % ne, out_edge = i;
        std::vector<Arc> arcs;
        for (std::size_t e = 0; e < ne; ++e) {
            if (e == out_edge || e == in_edge) continue;
            const Vec3 a = c.edge_start(e) - x, b = c.edge_end(e) - x;
            const double da = dot(a, n), db = dot(b, n);
            auto flat = [&](const Vec3& p) { return Vec2{dot(p, e1), dot(p, e2)}; };
            Arc arc;
            arc.edge = e;
            if (std::abs(da) <= tol && std::abs(db) <= tol) {
                const Vec2 pa = flat(a), pb = flat(b);
                const double ta = std::atan2(pa.y, pa.x), tb = std::atan2(pb.y, pb.x);
                double delta = tb - ta;
                if (delta > std::numbers::pi) delta -= 2 * std::numbers::pi;
                if (delta < -std::numbers::pi) delta += 2 * std::numbers::pi;
                arc.start = mod_pi(delta >= 0 ? ta : tb);
                arc.length = std::abs(delta);
                arc.radius = point_segment_distance({0, 0, 0}, a, b);
            } else if ((da > tol && db > tol) || (da < -tol && db < -tol)) {
                continue;
            } else {
                const double t = std::clamp(da / (da - db), 0.0, 1.0);
                const Vec2 p = flat(a + (b - a) * t);
                arc.start = mod_pi(std::atan2(p.y, p.x));
                arc.radius = norm2(p);
            }
            arcs.push_back(arc);
        }
        for (std::size_t p = 0; p < arcs.size(); ++p)
            for (std::size_t q = p + 1; q < arcs.size(); ++q) {
                const Arc& A = arcs[p];
                const Arc& B = arcs[q];
                const double diff = mod_pi(B.start - A.start);
                // Signed separation: negative means the arcs overlap by that much.
                const double gap = std::min(diff - A.length, std::numbers::pi - diff - B.length);
                const double radius = std::min(A.radius, B.radius);
                // Adjacent edges touching at their shared vertex give one point, not two.
                if (c.adjacent_edges(A.edge, B.edge) && gap > -1e-9) continue;
                const double r = gap <= 0 ? 0.0 : radius * std::sin(std::min(gap, std::numbers::pi / 2));
                record(out, r, tol, {i, A.edge, B.edge});
            }
    }
    out.detail = "distance-scaled angular gap between edges seen from a vertex in its osculating plane";
}

} // namespace

GenericityReport genericity_check(const PolyCurve& curve, double tol)
{
    GenericityReport report;
    report.tolerance = tol;
    check_ruled(curve, tol, report.ruled_surface);
    check_quintisecants(curve, tol, report.no_quintisecant);
    check_osculating(curve, tol, report.osculating);
    return report;
}

} // namespace knotspec
