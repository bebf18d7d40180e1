#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "knotspec/curve.hpp"
#include "knotspec/vec3.hpp"

namespace knotspec {

/// Order pattern of a quadrisecant. With the four points labelled 0..3 in
/// curve order, count how many consecutive pairs along the line are
/// neighbours in the cyclic curve order: 3 simple, 2 flipped, 1 alternating.
enum class Alternation { simple, flipped, alternating };

std::string to_string(Alternation a);
Alternation parse_alternation(const std::string& s);

/// `line_rank[k]` is the position along the line of the k-th point in
/// curve order.
Alternation classify_alternation(const std::array<int, 4>& line_rank);

struct Quadrisecant {
    Vec3 point;     ///< point on the line (the first hit along it)
    Vec3 direction; ///< unit
    /// All four arrays are indexed in curve order.
    std::array<std::size_t, 4> edges{};
    std::array<double, 4> curve_params{}; ///< edge index + parameter on the edge
    std::array<double, 4> line_params{};  ///< signed distance from `point` along `direction`
    std::array<int, 4> line_rank{};
    Alternation alternation = Alternation::simple;
    double residual = 0; ///< largest distance of a hit point from the line

    Vec3 hit(int k) const { return point + direction * line_params[k]; }
};

/// Bilinear form f(s,t) = a + b s + c t + e s t. For the line through
/// P(s) on one carrier edge and Q(t) on another, f = 0 exactly when that
/// line meets the supporting line of a third edge.
struct Bilinear {
    double a = 0, b = 0, c = 0, e = 0;
    double operator()(double s, double t) const { return a + b * s + c * t + e * s * t; }
    double ds(double t) const { return b + e * t; }
    double dt(double s) const { return c + e * s; }
};

Bilinear transversal_constraint(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1, const Vec3& r0,
                                const Vec3& r1);

struct QuadrisecantOptions {
    double tol = 1e-9;         ///< relative to the curve diameter
    int leaf_depth = 10;       ///< subdivision depth before Newton polishing
    std::size_t leaf_cap = 64; ///< refine further while more boxes than this survive
    int max_depth = 36;        ///< still above leaf_cap here marks a non-isolated family
    unsigned workers = 1;
};

struct QuadrisecantReport {
    std::vector<Quadrisecant> secants; ///< sorted by edge tuple
    double tolerance = 0;              ///< absolute
    std::uint64_t quadruples = 0;      ///< pairwise non-adjacent edge quadruples examined
    /// Quadruples whose common transversals form a continuum (no skew pair,
    /// coplanar or regulus configurations). Non-generic input.
    std::vector<std::array<std::size_t, 4>> degenerate;
    std::uint64_t merged = 0; ///< duplicate lines merged
    std::vector<std::string> warnings;

    std::map<std::string, std::size_t> class_counts() const;
};

/// Isolated lines meeting four pairwise non-adjacent edges of the curve.
QuadrisecantReport find_quadrisecants(const PolyCurve& curve, const QuadrisecantOptions& options = {});

inline std::vector<Quadrisecant> quadrisecants(const PolyCurve& curve, double tol = 1e-9)
{
    QuadrisecantOptions o;
    o.tol = tol;
    return find_quadrisecants(curve, o).secants;
}

/// n/12 (n-3)(n-4)(n-5) for an n-edge polygon.
double quadrisecant_upper_bound(std::size_t edges);

struct Height3Options {
    std::size_t directions = 200;
    double cone = 0.02;  ///< angular radius in radians
    int point = 0;       ///< which hit (curve order) marks the opened edge
    std::uint64_t seed = 0;
};

/// Heights observed for projections of K_x near a quadrisecant direction.
struct Height3Report {
    std::size_t base = 0; ///< vertex opened at
    std::size_t opened_edge = 0;
    double cone = 0;
    std::size_t directions = 0;
    std::size_t degenerate = 0;
    std::map<int, std::size_t> height_counts;        ///< raw diagrammatic height -> count
    std::map<int, std::size_t> closure_arc_counts;   ///< straight closure-arc crossings -> count
    int max_height = 0;
    int max_closure_arc = 0;
    double height3_fraction = 0;      ///< among non-degenerate directions
    double closure_arc3_fraction = 0; ///< straight arc crossing exactly 3 strands
};

/// Open `knot` at the edge carrying hit `options.point` of q and project the
/// open curve along directions uniform in a cone around q's line.
Height3Report height3_link(const PolyCurve& knot, const Quadrisecant& q, const Height3Options& options = {});

} // namespace knotspec
