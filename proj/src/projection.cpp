#include "knotspec/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "knotspec/errors.hpp"
#include "knotspec/rng.hpp"

namespace knotspec {

const char* to_string(DirectionScheme s)
{
    return s == DirectionScheme::uniform ? "uniform" : "fibonacci";
}

DirectionScheme parse_direction_scheme(const std::string& name)
{
    if (name == "uniform" || name == "uniform-random") return DirectionScheme::uniform;
    if (name == "fibonacci") return DirectionScheme::fibonacci;
    throw InputError("unknown direction scheme '" + name + "' (uniform, fibonacci)");
}

namespace {

Vec3 uniform_on_sphere(Rng& rng)
{
    const double z = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return normalized(Vec3{r * std::cos(phi), r * std::sin(phi), z});
}

} // namespace

Direction direction_at(std::uint64_t seed, std::size_t i, std::size_t n, DirectionScheme scheme, int attempt)
{
    Direction d;
    d.index = i;
    d.seed = seed;
    d.attempt = attempt;
    if (scheme == DirectionScheme::fibonacci && attempt == 0) {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(std::max<std::size_t>(n, 1));
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * static_cast<double>(i);
        d.xi = normalized(Vec3{r * std::cos(phi), r * std::sin(phi), z});
        return d;
    }
    Rng rng(derive_seed(seed, "direction", {i, static_cast<std::uint64_t>(attempt)}));
    d.xi = uniform_on_sphere(rng);
    return d;
}

std::vector<Direction> sample_directions(std::size_t n, std::uint64_t seed, DirectionScheme scheme)
{
    std::vector<Direction> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(direction_at(seed, i, n, scheme));
    return out;
}

std::pair<Vec3, Vec3> projection_basis(const Vec3& xi)
{
    const Vec3 a = std::abs(xi.x) < 0.6 ? Vec3{1, 0, 0} : (std::abs(xi.y) < 0.6 ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    const Vec3 u = normalized(cross(xi, a));
    const Vec3 v = cross(xi, u);
    return {u, v};
}

Diagram RawDiagram::to_diagram() const
{
    std::vector<Event> ev;
    ev.reserve(events.size());
    std::vector<int> signs(crossing_points.size(), 1);
    for (const RawEvent& e : events) {
        ev.push_back({e.crossing, e.over});
        signs[static_cast<std::size_t>(e.crossing)] = e.sign;
    }
    return Diagram(std::move(ev), std::move(signs), closed);
}

RawDiagram project(const PolyCurve& curve, const Vec3& xi_in, double rel_tol)
{
    const double len = norm(xi_in);
    if (!(len > 0)) throw InputError("projection direction must be nonzero");
    const Vec3 xi = xi_in / len;
    const auto [u, v] = projection_basis(xi);
    const double tol = rel_tol * curve.diameter();

    const std::size_t nv = curve.vertex_count();
    const std::size_t ne = curve.edge_count();
    std::vector<Vec2> p(nv);
    std::vector<double> h(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        const Vec3& x = curve.vertex(i);
        p[i] = {dot(x, u), dot(x, v)};
        h[i] = dot(x, xi);
    }
    auto a_of = [&](std::size_t e) { return p[e]; };
    auto b_of = [&](std::size_t e) { return p[(e + 1) % nv]; };

    struct Box {
        double x0, x1, y0, y1;
    };
    std::vector<Box> box(ne);
    std::vector<double> elen(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        const Vec2 a = a_of(e), b = b_of(e);
        elen[e] = norm2(b - a);
        if (elen[e] <= tol) throw DegenerateProjection("edge " + std::to_string(e) + " is parallel to the direction");
        box[e] = {std::min(a.x, b.x) - tol, std::max(a.x, b.x) + tol, std::min(a.y, b.y) - tol, std::max(a.y, b.y) + tol};
    }
    // Adjacent edges folding back onto each other.
    const std::size_t adjacent_pairs = curve.closed() ? ne : ne - 1;
    for (std::size_t e = 0; e < adjacent_pairs; ++e) {
        const std::size_t f = (e + 1) % ne;
        const Vec2 r = b_of(e) - a_of(e), w = b_of(f) - a_of(f);
        if (std::abs(cross2(r, w)) <= tol * (elen[e] + elen[f]) && dot2(r, w) < 0)
            throw DegenerateProjection("adjacent edges overlap in projection");
    }

    auto seg_point_dist = [](Vec2 q, Vec2 a, Vec2 b) {
        const Vec2 ab = b - a;
        const double t = std::clamp(dot2(q - a, ab) / dot2(ab, ab), 0.0, 1.0);
        return norm2(q - (a + ab * t));
    };

    struct Hit {
        std::size_t e1, e2;
        double t1, t2;
        Vec2 point;
    };
    std::vector<Hit> hits;
    for (std::size_t i = 0; i < ne; ++i) {
        for (std::size_t j = i + 1; j < ne; ++j) {
            const Box& bi = box[i];
            const Box& bj = box[j];
            if (bi.x1 < bj.x0 || bj.x1 < bi.x0 || bi.y1 < bj.y0 || bj.y1 < bi.y0) continue;
            if (curve.adjacent_edges(i, j)) continue;
            const Vec2 a = a_of(i), b = b_of(i), c = a_of(j), d = b_of(j);
            if (seg_point_dist(a, c, d) <= tol || seg_point_dist(b, c, d) <= tol || seg_point_dist(c, a, b) <= tol ||
                seg_point_dist(d, a, b) <= tol)
                throw DegenerateProjection("a vertex projects onto another strand");
            const Vec2 r = b - a, w = d - c;
            const double den = cross2(r, w);
            if (den == 0) continue; // parallel and, by the checks above, apart
            const double t = cross2(c - a, w) / den;
            const double s = cross2(c - a, r) / den;
            if (t <= 0 || t >= 1 || s <= 0 || s >= 1) continue;
            hits.push_back({i, j, t, s, a + r * t});
        }
    }

    RawDiagram out;
    out.closed = curve.closed();
    out.label = curve.label();
    out.xi = xi;
    if (!curve.closed()) out.endpoints = {p.front(), p.back()};

    for (std::size_t a = 0; a < hits.size(); ++a)
        for (std::size_t b = a + 1; b < hits.size(); ++b)
            if (norm2(hits[a].point - hits[b].point) <= tol)
                throw DegenerateProjection("two crossings coincide in projection");

    // Sort crossings by first passage so ids follow curve order.
    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
        return static_cast<double>(x.e1) + x.t1 < static_cast<double>(y.e1) + y.t1;
    });
    for (std::size_t k = 0; k < hits.size(); ++k) {
        const Hit& hit = hits[k];
        const double h1 = h[hit.e1] + hit.t1 * (h[(hit.e1 + 1) % nv] - h[hit.e1]);
        const double h2 = h[hit.e2] + hit.t2 * (h[(hit.e2 + 1) % nv] - h[hit.e2]);
        if (std::abs(h1 - h2) <= tol) throw DegenerateProjection("strands meet at equal height");
        const bool first_over = h1 > h2;
        const Vec2 d1 = b_of(hit.e1) - a_of(hit.e1);
        const Vec2 d2 = b_of(hit.e2) - a_of(hit.e2);
        const double cr = first_over ? cross2(d1, d2) : cross2(d2, d1);
        const int sign = cr > 0 ? 1 : -1;
        const int id = static_cast<int>(k);
        out.crossing_points.push_back(hit.point);
        out.events.push_back({id, first_over, sign, static_cast<double>(hit.e1) + hit.t1});
        out.events.push_back({id, !first_over, sign, static_cast<double>(hit.e2) + hit.t2});
    }
    std::sort(out.events.begin(), out.events.end(),
              [](const RawEvent& x, const RawEvent& y) { return x.position < y.position; });
    return out;
}

} // namespace knotspec
