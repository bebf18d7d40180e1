#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knotspec/curve.hpp"
#include "knotspec/diagram.hpp"
#include "knotspec/vec3.hpp"

namespace knotspec {

enum class DirectionScheme { uniform, fibonacci };

const char* to_string(DirectionScheme s);
DirectionScheme parse_direction_scheme(const std::string& name);

struct Direction {
    Vec3 xi;
    std::size_t index = 0;
    std::uint64_t seed = 0;
    int attempt = 0; ///< resampling attempt (0 = first draw)
};

/// Direction i of a sample of n. Uniform: i.i.d. on S^2 from a per-index
/// seed, so any subset can be generated independently. Fibonacci: the
/// spherical Fibonacci lattice. Attempts > 0 (resampling after a degenerate
/// projection) are always fresh uniform draws.
Direction direction_at(std::uint64_t seed, std::size_t i, std::size_t n, DirectionScheme scheme, int attempt = 0);
std::vector<Direction> sample_directions(std::size_t n, std::uint64_t seed, DirectionScheme scheme);

/// Orthonormal (u, v) with u x v = xi.
std::pair<Vec3, Vec3> projection_basis(const Vec3& xi);

struct RawEvent {
    int crossing = 0;
    bool over = false;
    int sign = 1;
    double position = 0; ///< edge index + edge parameter
};

struct RawDiagram {
    std::vector<RawEvent> events;  ///< curve order (leg to head for open curves)
    std::vector<Vec2> crossing_points; ///< by crossing id
    std::vector<Vec2> endpoints;       ///< projected first and last vertex (open curves)
    bool closed = false;
    std::string label;
    Vec3 xi;

    int crossing_count() const { return static_cast<int>(crossing_points.size()); }
    Diagram to_diagram() const;
};

/// Orthogonal projection along xi. Over means larger height x.xi; signs
/// follow the right-hand convention of Diagram. Throws DegenerateProjection
/// when an edge projects to (nearly) a point, a vertex projects within
/// tolerance of a non-incident edge, adjacent edges fold onto each other,
/// two crossings coincide, or the strands meet at equal height.
/// Tolerance = rel_tol * diameter.
RawDiagram project(const PolyCurve& curve, const Vec3& xi, double rel_tol = 1e-9);

} // namespace knotspec
