#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "knotspec/curve.hpp"
#include "knotspec/errors.hpp"
#include "knotspec/geometry.hpp"
#include "knotspec/projection.hpp"
#include "knotspec/secants.hpp"
#include "support.hpp"

using namespace knotspec;

namespace {

std::vector<std::array<std::size_t, 4>> edge_sets(const QuadrisecantReport& r)
{
    std::vector<std::array<std::size_t, 4>> out;
    for (const auto& q : r.secants) {
        auto e = q.edges;
        std::sort(e.begin(), e.end());
        out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Count consecutive pairs along the line that are cyclic curve neighbours.
int neighbour_pairs(const std::array<int, 4>& rank)
{
    std::array<int, 4> along{};
    for (int k = 0; k < 4; ++k) along[static_cast<std::size_t>(rank[static_cast<std::size_t>(k)])] = k;
    int n = 0;
    for (int i = 0; i < 3; ++i) {
        const int d = std::abs(along[static_cast<std::size_t>(i)] - along[static_cast<std::size_t>(i + 1)]);
        if (d == 1 || d == 3) ++n;
    }
    return n;
}

double line_distance(const Vec3& p, const Quadrisecant& q) { return point_line_distance(p, q.point, q.direction); }

} // namespace

TEST_SUITE("secants") {

TEST_CASE("alternation classes")
{
    std::array<int, 4> perm{0, 1, 2, 3};
    int alternating = 0;
    do {
        const int n = neighbour_pairs(perm);
        const auto a = classify_alternation(perm);
        CHECK(a == (n == 3 ? Alternation::simple : n == 2 ? Alternation::flipped : Alternation::alternating));
        if (a == Alternation::alternating) ++alternating;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(alternating > 0);
    // a_{i-1} a_{i+1} a_i a_{i+2} with i = 1: curve points 0,2,1,3 along the line
    CHECK(classify_alternation({0, 2, 1, 3}) == Alternation::alternating);
    CHECK(classify_alternation({0, 1, 2, 3}) == Alternation::simple);
    CHECK(parse_alternation(to_string(Alternation::flipped)) == Alternation::flipped);
}

TEST_CASE("transversal constraint vanishes on a transversal")
{
    Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        auto rv = [&] { return Vec3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}; };
        const Vec3 p0 = rv(), p1 = rv(), q0 = rv(), q1 = rv();
        const double s = rng.uniform(), t = rng.uniform();
        const Vec3 P = p0 + (p1 - p0) * s, Q = q0 + (q1 - q0) * t;
        const Vec3 R = P + (Q - P) * rng.uniform(-2, 3);
        const Vec3 r0 = R + rv(), r1 = R + (R - r0) * 0.7;
        const auto f = transversal_constraint(p0, p1, q0, q1, r0, r1);
        const double scale = std::abs(f.a) + std::abs(f.b) + std::abs(f.c) + std::abs(f.e);
        CHECK(std::abs(f(s, t)) <= 1e-9 * scale);
        // and it does not vanish identically
        CHECK(scale > 0);
    }
}

TEST_CASE("convex planar polygon has no quadrisecants")
{
    const auto r = find_quadrisecants(make_planar_ngon(16));
    CHECK(r.secants.empty());
}

TEST_CASE("trefoil quadrisecants")
{
    const auto tref = load_bundled("trefoil32");
    const auto r = find_quadrisecants(tref);
    MESSAGE("trefoil32 quadrisecants: " << r.secants.size() << ", degenerate quadruples: " << r.degenerate.size());
    CHECK(r.secants.size() >= 2);
    CHECK(std::any_of(r.secants.begin(), r.secants.end(), [](const Quadrisecant& q) { return q.alternation == Alternation::alternating; }));
    CHECK(r.degenerate.empty());
    CHECK(static_cast<double>(r.secants.size()) <= quadrisecant_upper_bound(tref.edge_count()));

    const double tol = 1e-9 * tref.diameter();
    for (const auto& q : r.secants) {
        CHECK(std::abs(norm(q.direction) - 1) < 1e-12);
        for (int k = 0; k < 4; ++k) {
            const std::size_t e = q.edges[static_cast<std::size_t>(k)];
            const double u = q.curve_params[static_cast<std::size_t>(k)] - static_cast<double>(e);
            CHECK(u > 0);
            CHECK(u < 1);
            const Vec3 on_edge = tref.edge_start(e) + (tref.edge_end(e) - tref.edge_start(e)) * u;
            CHECK(line_distance(on_edge, q) <= tol);
            CHECK(distance(on_edge, q.hit(k)) <= 10 * tol);
            for (int j = k + 1; j < 4; ++j) CHECK_FALSE(tref.adjacent_edges(e, q.edges[static_cast<std::size_t>(j)]));
        }
        for (int k = 0; k + 1 < 4; ++k) CHECK(q.curve_params[static_cast<std::size_t>(k)] < q.curve_params[static_cast<std::size_t>(k + 1)]);
        CHECK(q.alternation == classify_alternation(q.line_rank));
    }
}

TEST_CASE("solver matches a brute-force scan")
{
    for (const char* name : {"trefoil32", "3_1"}) {
        const auto c = load_bundled(name);
        const auto lib = edge_sets(find_quadrisecants(c));
        auto scan = oracle::scan_quadrisecants(c.vertices(), c.closed());
        CHECK_MESSAGE(lib == scan, name << ": solver " << lib.size() << ", scan " << scan.size());
    }
}

TEST_CASE("counts are stable under tolerance halving")
{
    const auto tref = load_bundled("trefoil32");
    QuadrisecantOptions o;
    const auto base = find_quadrisecants(tref, o);
    for (double tol : {5e-10, 2.5e-10}) {
        o.tol = tol;
        const auto r = find_quadrisecants(tref, o);
        CHECK(r.secants.size() == base.secants.size());
        CHECK(r.class_counts() == base.class_counts());
    }
}

TEST_CASE("rigid motions move the quadrisecants")
{
    const auto tref = load_bundled("3_1");
    const auto base = find_quadrisecants(tref);
    Rng rng(2);
    for (int trial = 0; trial < 3; ++trial) {
        const Mat3 rot = support::random_rotation(rng);
        const Vec3 shift{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const auto moved = find_quadrisecants(tref.transformed(rot, shift));
        REQUIRE(moved.secants.size() == base.secants.size());
        CHECK(edge_sets(moved) == edge_sets(base));
        for (const auto& q : base.secants) {
            const auto it = std::find_if(moved.secants.begin(), moved.secants.end(), [&](const Quadrisecant& m) { return m.edges == q.edges; });
            REQUIRE(it != moved.secants.end());
            for (int k = 0; k < 4; ++k) CHECK(distance(rot * q.hit(k) + shift, it->hit(k)) < 1e-7);
            CHECK(it->alternation == q.alternation);
        }
    }
}

TEST_CASE("subdivision keeps the quadrisecant lines")
{
    const auto tref = load_bundled("3_1");
    const auto base = find_quadrisecants(tref);
    const auto fine = find_quadrisecants(tref.subdivided(2));
    MESSAGE("3_1: " << base.secants.size() << " lines, subdivided: " << fine.secants.size());
    CHECK(fine.secants.size() == base.secants.size());
    for (const auto& q : base.secants) {
        bool found = false;
        for (const auto& f : fine.secants) {
            bool same = true;
            for (int k = 0; k < 4; ++k) same = same && line_distance(q.hit(k), f) < 1e-7;
            found = found || same;
        }
        CHECK(found);
    }
}

TEST_CASE("upper bound formula")
{
    CHECK(quadrisecant_upper_bound(6) == doctest::Approx(6.0 / 12 * 3 * 2 * 1));
    CHECK(quadrisecant_upper_bound(32) == doctest::Approx(32.0 / 12 * 29 * 28 * 27));
}

TEST_CASE("projection along a quadrisecant is degenerate")
{
    const auto tref = load_bundled("trefoil32");
    const auto r = find_quadrisecants(tref);
    REQUIRE_FALSE(r.secants.empty());
    for (const auto& q : r.secants) CHECK_THROWS_AS(project(tref, q.direction), DegenerateProjection);
}

TEST_CASE("heights near a quadrisecant direction")
{
    const auto tref = load_bundled("trefoil32");
    const auto r = find_quadrisecants(tref);
    const auto it = std::find_if(r.secants.begin(), r.secants.end(), [](const Quadrisecant& q) { return q.alternation == Alternation::alternating; });
    REQUIRE(it != r.secants.end());
    for (int point = 0; point < 4; ++point) {
        Height3Options o;
        o.point = point;
        o.directions = 200;
        const auto h = height3_link(tref, *it, o);
        CHECK(h.max_closure_arc <= 3);
        CHECK(h.directions == 200);
        CHECK(h.degenerate < 200);
        MESSAGE("point " << point << ": max height " << h.max_height << ", arc-3 fraction " << h.closure_arc3_fraction);
    }
}

} // TEST_SUITE
