#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knotspec/vec3.hpp"

namespace knotspec {

/// Polygonal curve in 3-space, open or closed. Construction validates the
/// vertex count, non-degeneracy (no repeated consecutive vertices, no
/// fold-backs) and simplicity; invalid input throws InputError.
class PolyCurve {
  public:
    PolyCurve(std::vector<Vec3> vertices, bool closed, std::string label = {});

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const Vec3& vertex(std::size_t i) const { return vertices_[i]; }
    bool closed() const { return closed_; }
    const std::string& label() const { return label_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return closed_ ? vertices_.size() : vertices_.size() - 1; }

    /// Edge i runs from vertex i to vertex i+1 (mod n when closed).
    const Vec3& edge_start(std::size_t i) const { return vertices_[i]; }
    const Vec3& edge_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

    /// Edges sharing a vertex.
    bool adjacent_edges(std::size_t i, std::size_t j) const;

    double diameter() const { return diameter_; }
    double length() const;

    /// Apply x -> rotation * x + shift to every vertex.
    PolyCurve transformed(const Mat3& rotation, const Vec3& shift = {}) const;
    PolyCurve scaled(double factor) const;
    /// Split every edge into `parts` equal pieces.
    PolyCurve subdivided(int parts) const;
    PolyCurve with_label(std::string label) const;

    bool operator==(const PolyCurve& o) const
    {
        return closed_ == o.closed_ && vertices_ == o.vertices_;
    }

  private:
    std::vector<Vec3> vertices_;
    bool closed_;
    std::string label_;
    double diameter_ = 0;
};

/// Simplicity test on raw vertices; `tol` is absolute.
bool is_simple(const std::vector<Vec3>& vertices, bool closed, double tol);

/// Where an open curve came from when it was cut out of a knot.
struct OpenOrigin {
    std::string knot_label;
    std::size_t opened_vertex = 0;
    std::size_t deleted_from = 0; ///< vertex index of the deleted edge's start
    std::size_t deleted_to = 0;   ///< equals opened_vertex
};

class OpenCurve {
  public:
    explicit OpenCurve(PolyCurve base, std::optional<OpenOrigin> origin = std::nullopt);

    const PolyCurve& curve() const { return base_; }
    const std::optional<OpenOrigin>& origin() const { return origin_; }
    /// Distance between the first and last vertex; strictly positive.
    double gap() const;

  private:
    PolyCurve base_;
    std::optional<OpenOrigin> origin_;
};

/// Hausdorff distance between the supports of two polygonal curves,
/// computed over the continuous edges by Lipschitz branch and bound.
double hausdorff(const PolyCurve& a, const PolyCurve& b);

/// One-sided sup_{p in a} dist(p, b).
double directed_hausdorff(const PolyCurve& a, const PolyCurve& b);

/// Half the minimum distance between non-adjacent edges; +inf when there
/// are no non-adjacent edge pairs. Throws InputError on self-intersection.
double tube_radius(const PolyCurve& curve);

/// Delete the edge ending at vertex x. The result starts at x and ends at x-1.
OpenCurve open_at(const PolyCurve& knot, std::size_t x);

struct NeighborhoodOptions {
    /// Jitter amplitude as a fraction of h; 0 reproduces K_x exactly.
    double amplitude = 1.0;
    int max_attempts = 1000;
};

/// Independent jittered copies of open_at(knot, x). Every sample keeps each
/// vertex within h of its original (so the straight-line homotopy, closure
/// arc included, stays inside the tube), is simple, and satisfies
/// hausdorff(sample, K_x) < h. Requires h < tube_radius(knot).
std::vector<OpenCurve> sample_neighborhood(const PolyCurve& knot, std::size_t x, double h, std::size_t n,
                                           std::uint64_t seed, const NeighborhoodOptions& options = {});

/// Result of one genericity predicate.
struct GenericityCondition {
    bool pass = true;
    double residual = std::numeric_limits<double>::infinity(); ///< smallest residual seen
    std::vector<std::vector<std::size_t>> offenders;           ///< indices that failed
    std::string detail;
};

struct GenericityReport {
    double tolerance = 0;
    GenericityCondition ruled_surface;   ///< (i) vertices off doubly-ruled surfaces of skew edge triples
    GenericityCondition no_quintisecant; ///< (ii) no 5-secants, quadrisecant families isolated
    GenericityCondition osculating;      ///< (iii) no vertex trisecant in the osculating plane
    bool all_pass() const { return ruled_surface.pass && no_quintisecant.pass && osculating.pass; }
};

GenericityReport genericity_check(const PolyCurve& curve, double tol = 1e-9);

// Generators.
PolyCurve make_planar_ngon(int n, double radius = 1.0);
PolyCurve make_torus_knot(int p, int q, int n, double major = 2.0, double minor = 1.0);
/// Closure of a braid word (generators 1..strands-1, negative = inverse).
PolyCurve make_braid_closure(const std::vector<int>& word, int strands);
/// Dispatch by name: "planar_ngon", "torus_knot", "from_file", "braid".
PolyCurve make_curve(const std::string& kind, const std::vector<double>& params, const std::string& path = {});

/// Curve text format: first non-comment line "open" or "closed", then one
/// vertex per line as three numbers; '#' starts a comment.
PolyCurve read_curve(const std::string& path);
PolyCurve parse_curve(const std::string& text, const std::string& label = {});
std::string format_curve(const PolyCurve& curve);
void write_curve(const PolyCurve& curve, const std::string& path);

/// Bundled data directory: $KNOTSPEC_DATA if set, else the source tree copy.
std::string data_dir();
/// Load a bundled knot by name (e.g. "3_1", "kinoshita_terasaka").
PolyCurve load_bundled(const std::string& name);

} // namespace knotspec
