#pragma once

// Independent reference computations used to check the library. None of
// them call into the code they check; they trade speed for simplicity.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "knotspec/vec3.hpp"

namespace oracle {

using Poly = std::map<int, long long>; // exponent of A -> coefficient

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
std::string poly_text(const Poly& p);

/// Signed Gauss code parsed without the library ("k:" or "c:" prefix).
struct Code {
    bool closed = false;
    struct Ev {
        int label = 0;
        bool over = false;
        int sign = 1;
    };
    std::vector<Ev> events;
};
Code parse_code(const std::string& text);

/// Kauffman bracket by enumerating all 2^c states and counting loops with
/// union-find. Unknot and trivial knotoid normalized to 1.
Poly state_sum_bracket(const std::string& code);
int writhe(const std::string& code);
/// (-A^3)^(-w) <D>
Poly jones(const std::string& code);

/// Alexander determinant of a closed classical code evaluated at integer t
/// (exact, fraction-free elimination). Defined up to a sign and a power of t.
long long alexander_at(const std::string& code, long long t);
/// Alexander polynomial is a unit +-t^k (checked at t = -1, 2, 3).
bool alexander_trivial(const std::string& code);

/// Faces of the plane complement of a 2D polyline and the minimum number of
/// strands a path between the two endpoint regions has to cross, found by
/// rasterizing the drawing and flood filling.
struct Arrangement {
    int faces = 0;
    int height = 0;
};
Arrangement raster_arrangement(const std::vector<knotspec::Vec2>& polyline, int resolution = 1600);

/// Orthogonal projection onto a plane normal to xi, with a basis built here.
std::vector<knotspec::Vec2> project_polyline(const std::vector<knotspec::Vec3>& pts, const knotspec::Vec3& xi);

/// Lines meeting four segments, by scanning one edge and bisecting sign
/// changes of the coplanarity residual. Returns sorted edge quadruples.
std::vector<std::array<std::size_t, 4>> scan_quadrisecants(const std::vector<knotspec::Vec3>& vertices, bool closed,
                                                           int steps = 2000);

/// Hausdorff distance from dense samples of each curve to the exact
/// segments of the other; error at most half the sample spacing.
double dense_hausdorff(const std::vector<knotspec::Vec3>& a, bool a_closed, const std::vector<knotspec::Vec3>& b,
                       bool b_closed, int per_edge = 400);

} // namespace oracle
