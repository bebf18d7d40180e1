#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "knotspec/curve.hpp"
#include "knotspec/errors.hpp"
#include "knotspec/invariants.hpp"
#include "knotspec/projection.hpp"
#include "support.hpp"

using namespace knotspec;

namespace {

// Point-to-segment distance by projection, then golden-section search over
// the first segment (the distance is convex in its parameter).
double pt_seg(const Vec3& p, const Vec3& a, const Vec3& b)
{
    const Vec3 d = b - a;
    double t = dot(p - a, d) / dot(d, d);
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + d * t));
}

double seg_seg(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1)
{
    auto f = [&](double s) { return pt_seg(p0 + (p1 - p0) * s, q0, q1); };
    double lo = 0, hi = 1;
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int i = 0; i < 200; ++i) {
        const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
        if (f(m1) < f(m2)) hi = m2;
        else lo = m1;
    }
    return std::min({f(0.5 * (lo + hi)), f(0), f(1)});
}

double brute_tube(const PolyCurve& c)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.edge_count(); ++i)
        for (std::size_t j = i + 1; j < c.edge_count(); ++j) {
            if (c.adjacent_edges(i, j)) continue;
            best = std::min(best, seg_seg(c.edge_start(i), c.edge_end(i), c.edge_start(j), c.edge_end(j)));
        }
    return best / 2;
}

bool brute_simple(const PolyCurve& c) { return brute_tube(c) > 1e-12; }

double max_edge(const PolyCurve& c)
{
    double m = 0;
    for (std::size_t i = 0; i < c.edge_count(); ++i) m = std::max(m, distance(c.edge_start(i), c.edge_end(i)));
    return m;
}

double oracle_hausdorff(const PolyCurve& a, const PolyCurve& b)
{
    return oracle::dense_hausdorff(a.vertices(), a.closed(), b.vertices(), b.closed());
}

PolyCurve jitter(const PolyCurve& c, double radius, Rng& rng)
{
    auto v = c.vertices();
    for (auto& p : v) p += support::random_unit(rng) * (radius * rng.uniform());
    return PolyCurve(v, c.closed());
}

PolyCurve random_open(Rng& rng, int n)
{
    for (;;) {
        std::vector<Vec3> v;
        for (int i = 0; i < n; ++i) v.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
        try {
            return PolyCurve(v, false);
        } catch (const InputError&) {
        }
    }
}

} // namespace

TEST_SUITE("curves") {

TEST_CASE("curve construction validates input")
{
    CHECK_THROWS_AS(PolyCurve({{0, 0, 0}, {1, 0, 0}}, true), InputError);
    CHECK_THROWS_AS(PolyCurve({{0, 0, 0}}, false), InputError);
    CHECK_THROWS_AS(PolyCurve({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}, false), InputError);
    // fold-back onto the previous edge
    CHECK_THROWS_AS(PolyCurve({{0, 0, 0}, {2, 0, 0}, {1, 0, 0}}, false), InputError);
    // bow tie
    CHECK_THROWS_AS(PolyCurve({{0, 0, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}}, true), InputError);
    CHECK_NOTHROW(PolyCurve({{0, 0, 0}, {1, 0, 0}}, false));
}

TEST_CASE("hausdorff basic values")
{
    const auto tref = load_bundled("trefoil32");
    CHECK(hausdorff(tref, tref) == 0);

    const double d = 0.37;
    PolyCurve seg({{0, 0, 0}, {1, 0, 0}}, false);
    PolyCurve moved({{0, d, 0}, {1, d, 0}}, false);
    CHECK(hausdorff(seg, moved) == doctest::Approx(d).epsilon(1e-12));

    // The supremum can sit inside an edge: a tent against its base.
    PolyCurve tent({{0, 0, 0}, {1, 1, 0}, {2, 0, 0}}, false);
    PolyCurve base({{0, 0, 0}, {2, 0, 0}}, false);
    CHECK(hausdorff(tent, base) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(directed_hausdorff(base, tent) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("hausdorff of a jittered trefoil is bounded by the jitter")
{
    const auto tref = load_bundled("trefoil32");
    Rng rng(11);
    for (double eps : {1e-3, 1e-2, 5e-2}) {
        const auto j = jitter(tref, eps, rng);
        const double lib = hausdorff(tref, j);
        CHECK(lib <= eps + 1e-12);
        CHECK(oracle_hausdorff(tref, j) <= eps + 1e-12);
    }
}

TEST_CASE("hausdorff agrees with dense sampling")
{
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_open(rng, 3 + trial % 5);
        const auto b = random_open(rng, 3 + (trial * 7) % 5);
        const double lib = hausdorff(a, b);
        const double orc = oracle_hausdorff(a, b);
        const double slack = std::max(max_edge(a), max_edge(b)) / 400;
        CHECK(orc <= lib + 1e-9);
        CHECK(lib <= orc + slack);
    }
}

TEST_CASE("hausdorff is a pseudometric on random triples")
{
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_open(rng, 4), b = random_open(rng, 5), c = random_open(rng, 3);
        const double ab = hausdorff(a, b), ba = hausdorff(b, a), bc = hausdorff(b, c), ac = hausdorff(a, c);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
        CHECK(ab >= 0);
        CHECK(ac <= ab + bc + 1e-9);
    }
    // Same support, different vertex lists.
    PolyCurve seg({{0, 0, 0}, {1, 0, 0}}, false);
    PolyCurve split({{0, 0, 0}, {0.3, 0, 0}, {1, 0, 0}}, false);
    CHECK(hausdorff(seg, split) == doctest::Approx(0.0));
}

TEST_CASE("hausdorff rejects degenerate curves at construction")
{
    CHECK_THROWS_AS(PolyCurve({{0, 0, 0}, {0, 0, 0}}, false), InputError);
}

TEST_CASE("tube radius")
{
    const auto gon = make_planar_ngon(16);
    CHECK(tube_radius(gon) == doctest::Approx(brute_tube(gon)).epsilon(1e-9));

    const auto tref = load_bundled("trefoil32");
    CHECK(tube_radius(tref) == doctest::Approx(brute_tube(tref)).epsilon(1e-9));

    PolyCurve two({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}, false);
    CHECK(std::isinf(tube_radius(two)));

    CHECK(tube_radius(gon.scaled(3.5)) == doctest::Approx(3.5 * tube_radius(gon)).epsilon(1e-12));
}

TEST_CASE("open_at")
{
    PolyCurve tri({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, true);
    const auto l = open_at(tri, 0);
    CHECK_FALSE(l.curve().closed());
    CHECK(l.curve().vertex_count() == 3);
    CHECK(l.curve().vertices().front() == tri.vertex(0));
    CHECK(l.curve().vertices().back() == tri.vertex(2));

    const auto tref = load_bundled("trefoil32");
    for (std::size_t x : {0u, 7u, 31u}) {
        const auto k = open_at(tref, x);
        REQUIRE(k.origin());
        CHECK(k.curve().vertex_count() == 32);
        CHECK(k.origin()->opened_vertex == x);
        CHECK(k.origin()->deleted_from == (x + 31) % 32);
        CHECK(k.curve().vertices().front() == tref.vertex(x));
        CHECK(k.curve().vertices().back() == tref.vertex((x + 31) % 32));
        CHECK(k.gap() == doctest::Approx(distance(tref.vertex(x), tref.vertex((x + 31) % 32))));
    }

    const auto gon = make_planar_ngon(16);
    std::vector<std::vector<Vec3>> seen;
    for (std::size_t x = 0; x < 16; ++x) seen.push_back(open_at(gon, x).curve().vertices());
    std::sort(seen.begin(), seen.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Vec3& p, const Vec3& q) {
            return std::tie(p.x, p.y, p.z) < std::tie(q.x, q.y, q.z);
        });
    });
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());

    CHECK_THROWS_AS(open_at(tri, 3), InputError);
    CHECK_THROWS_AS(open_at(PolyCurve({{0, 0, 0}, {1, 0, 0}}, false), 0), InputError);
}

TEST_CASE("sample_neighborhood")
{
    const auto gon = make_planar_ngon(16);
    const double h = 0.05 * tube_radius(gon);

    NeighborhoodOptions still;
    still.amplitude = 0;
    const auto exact = sample_neighborhood(gon, 3, h, 1, 9, still);
    REQUIRE(exact.size() == 1);
    CHECK(exact[0].curve() == open_at(gon, 3).curve());

    const auto samples = sample_neighborhood(gon, 0, h, 100, 42);
    REQUIRE(samples.size() == 100);
    const auto kx = open_at(gon, 0).curve();
    for (const auto& s : samples) {
        CHECK(brute_simple(s.curve()));
        CHECK(hausdorff(s.curve(), kx) < h);
        CHECK(oracle_hausdorff(s.curve(), kx) < h);
        for (std::size_t i = 0; i < kx.vertex_count(); ++i) CHECK(distance(s.curve().vertex(i), kx.vertex(i)) <= h);
    }

    const auto again = sample_neighborhood(gon, 0, h, 100, 42);
    for (std::size_t i = 0; i < 100; ++i) CHECK(again[i].curve() == samples[i].curve());
    const auto other = sample_neighborhood(gon, 0, h, 100, 43);
    CHECK_FALSE(other[0].curve() == samples[0].curve());

    try {
        sample_neighborhood(gon, 0, tube_radius(gon), 1, 0);
        FAIL("h at the tube radius must be refused");
    } catch (const ComputationRefused& e) {
        CHECK(e.code() == "h_too_large");
    }
}

TEST_CASE("neighborhood samples of the trefoil keep the bound")
{
    const auto tref = load_bundled("trefoil32");
    const double h = 0.1 * tube_radius(tref);
    const auto kx = open_at(tref, 5).curve();
    for (const auto& s : sample_neighborhood(tref, 5, h, 30, 3)) {
        CHECK(hausdorff(s.curve(), kx) < h);
        CHECK(brute_simple(s.curve()));
    }
}

TEST_CASE("jitter below the tube radius keeps the knot type")
{
    const auto tref = load_bundled("trefoil32");
    const double r = tube_radius(tref);
    const Vec3 xi = normalized(Vec3{0.123, 0.311, 0.942});
    const auto reference = jones_normalized(project(tref, xi).to_diagram());
    CHECK(support::to_oracle(reference) == oracle::jones(support::kTrefoilMirror));

    Rng rng(2024);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto j = jitter(tref, 0.99 * r, rng);
        try {
            CHECK(jones_normalized(project(j, xi).to_diagram()) == reference);
            ++checked;
        } catch (const DegenerateProjection&) {
        }
    }
    CHECK(checked >= 990);
}

TEST_CASE("genericity diagnostics")
{
    // Five pairwise non-adjacent rungs through the x-axis, joined by arches.
    std::vector<Vec3> rungs;
    const double tilt[5] = {0.3, -0.5, 0.7, 0.2, -0.4};
    for (int k = 0; k < 5; ++k) {
        const double side = k % 2 ? 1.0 : -1.0;
        rungs.push_back({2.0 * k, side, side * tilt[k]});
        rungs.push_back({2.0 * k, -side, -side * tilt[k]});
        if (k < 4) rungs.push_back({2.0 * k + 1, -2 * side, 1});
    }
    rungs.push_back({8, 1, 5});
    rungs.push_back({0, -1, 5});
    const auto planted = genericity_check(PolyCurve(rungs, true));
    CHECK_FALSE(planted.no_quintisecant.pass);
    CHECK_FALSE(planted.no_quintisecant.offenders.empty());

    const auto jittered = genericity_check(load_bundled("3_1"), 1e-9);
    CHECK(jittered.ruled_surface.pass);
    CHECK(jittered.no_quintisecant.pass);
    CHECK(jittered.osculating.pass);
    CHECK(jittered.all_pass());

    const auto planar = genericity_check(make_planar_ngon(12));
    CHECK_FALSE(planar.no_quintisecant.pass);

    for (const auto* c : {&planted.ruled_surface, &planted.no_quintisecant, &planted.osculating}) {
        CHECK(c->residual >= 0);
        CHECK(c->pass == (c->residual > planted.tolerance));
    }
}

TEST_CASE("generators")
{
    const auto gon = make_planar_ngon(16);
    CHECK(gon.closed());
    CHECK(gon.vertex_count() == 16);
    for (const auto& v : gon.vertices()) CHECK(v.z == 0);
    CHECK(std::abs(jones_normalized(project(gon, {0, 0, 1}).to_diagram()).coefficient(0)) == 1);

    const auto tk = make_torus_knot(2, 3, 32);
    CHECK(tk.vertex_count() == 32);
    CHECK(brute_simple(tk));

    const std::string path = support::tmp_path("two_vertex.txt");
    {
        std::ofstream f(path);
        f << "# minimal\nopen\n0 0 0\n1 2 3\n";
    }
    const auto seg = make_curve("from_file", {}, path);
    CHECK_FALSE(seg.closed());
    CHECK(seg.vertex_count() == 2);
    CHECK_NOTHROW(OpenCurve{seg});

    CHECK_THROWS_AS(make_curve("torus_knot", {2, 4, 32}), InputError);
    CHECK_THROWS_AS(make_curve("nope", {}), InputError);
    CHECK_THROWS_AS(parse_curve("closed\n0 0 0\n1 0\n"), InputError);
    CHECK_THROWS_AS(parse_curve("spiral\n0 0 0\n1 0 0\n"), InputError);
}

TEST_CASE("curve text round trip")
{
    const auto tref = load_bundled("3_1");
    const auto back = parse_curve(format_curve(tref));
    CHECK(back == tref);
}

TEST_CASE("bundled fixtures load and are simple")
{
    for (const char* name : {"3_1", "4_1", "5_2", "trefoil32", "conway", "kinoshita_terasaka"}) {
        const auto c = load_bundled(name);
        CHECK(c.closed());
        CHECK(tube_radius(c) > 0);
    }
    CHECK_FALSE(load_bundled("seg").closed());
    CHECK_THROWS_AS(load_bundled("no_such_knot"), InputError);
}

} // TEST_SUITE
