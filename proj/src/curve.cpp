#include "knotspec/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

#include "knotspec/errors.hpp"
#include "knotspec/geometry.hpp"
#include "knotspec/rng.hpp"

namespace knotspec {

namespace {

double vertex_diameter(const std::vector<Vec3>& v)
{
    double d = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, distance(v[i], v[j]));
    return d;
}

bool edges_adjacent(std::size_t i, std::size_t j, std::size_t n_vertices, bool closed)
{
    if (i == j) return true;
    const std::size_t lo = std::min(i, j), hi = std::max(i, j);
    if (hi - lo == 1) return true;
    return closed && lo == 0 && hi == n_vertices - 1;
}

} // namespace

bool is_simple(const std::vector<Vec3>& v, bool closed, double tol)
{
    const std::size_t n = v.size();
    const std::size_t edges = closed ? n : n - 1;
    for (std::size_t i = 0; i < edges; ++i) {
        for (std::size_t j = i + 1; j < edges; ++j) {
            if (edges_adjacent(i, j, n, closed)) continue;
            const auto sp = segment_segment(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]);
            if (sp.distance <= tol) return false;
        }
    }
    return true;
}

PolyCurve::PolyCurve(std::vector<Vec3> vertices, bool closed, std::string label)
    : vertices_(std::move(vertices)), closed_(closed), label_(std::move(label))
{
    const std::size_t n = vertices_.size();
    if (closed_ && n < 3) throw InputError("closed curve needs at least 3 vertices", "degenerate_curve");
    if (!closed_ && n < 2) throw InputError("open curve needs at least 2 vertices", "degenerate_curve");
    for (const Vec3& p : vertices_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw InputError("non-finite vertex coordinate", "degenerate_curve");
    const double diam = vertex_diameter(vertices_);
    diameter_ = diam;
    const double tol = 1e-12 * std::max(diam, 1e-300);
    if (diam == 0) throw InputError("all vertices coincide", "degenerate_curve");
    const std::size_t edges = edge_count();
    for (std::size_t i = 0; i < edges; ++i) {
        if (distance(edge_start(i), edge_end(i)) <= tol)
            throw InputError("consecutive vertices coincide at edge " + std::to_string(i), "degenerate_curve");
    }
    // Fold-back: consecutive edges collinear and pointing back onto each other.
    for (std::size_t i = 0; i + (closed_ ? 0 : 1) < edges; ++i) {
        const std::size_t j = (i + 1) % edges;
        if (!closed_ && j == 0) break;
        const Vec3 a = edge_end(i) - edge_start(i);
        const Vec3 b = edge_end(j) - edge_start(j);
        if (norm(cross(a, b)) <= 1e-12 * norm(a) * norm(b) && dot(a, b) < 0)
            throw InputError("edges " + std::to_string(i) + " and " + std::to_string(j) + " overlap", "degenerate_curve");
    }
    if (!is_simple(vertices_, closed_, tol)) throw InputError("curve is not simple", "self_intersection");
}

bool PolyCurve::adjacent_edges(std::size_t i, std::size_t j) const
{
    return edges_adjacent(i, j, vertices_.size(), closed_);
}

double PolyCurve::length() const
{
    double total = 0;
    for (std::size_t i = 0; i < edge_count(); ++i) total += distance(edge_start(i), edge_end(i));
    return total;
}

PolyCurve PolyCurve::transformed(const Mat3& rotation, const Vec3& shift) const
{
    std::vector<Vec3> out;
    out.reserve(vertices_.size());
    for (const Vec3& p : vertices_) out.push_back(rotation * p + shift);
    return PolyCurve(std::move(out), closed_, label_);
}

PolyCurve PolyCurve::scaled(double factor) const
{
    std::vector<Vec3> out;
    out.reserve(vertices_.size());
    for (const Vec3& p : vertices_) out.push_back(p * factor);
    return PolyCurve(std::move(out), closed_, label_);
}

PolyCurve PolyCurve::subdivided(int parts) const
{
    if (parts < 1) throw InputError("subdivision count must be positive");
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < edge_count(); ++i) {
        for (int k = 0; k < parts; ++k) {
            const double t = static_cast<double>(k) / parts;
            out.push_back(edge_start(i) * (1 - t) + edge_end(i) * t);
        }
    }
    if (!closed_) out.push_back(vertices_.back());
    return PolyCurve(std::move(out), closed_, label_);
}

PolyCurve PolyCurve::with_label(std::string label) const
{
    PolyCurve out = *this;
    out.label_ = std::move(label);
    return out;
}

OpenCurve::OpenCurve(PolyCurve base, std::optional<OpenOrigin> origin) : base_(std::move(base)), origin_(std::move(origin))
{
    if (base_.closed()) throw InputError("open curve expected");
    if (gap() <= 0) throw InputError("open curve endpoints coincide");
}

double OpenCurve::gap() const { return distance(base_.vertices().front(), base_.vertices().back()); }

// ---------------------------------------------------------------------------
// Hausdorff distance

namespace {

std::vector<double> segment_distances(const Vec3& p, const PolyCurve& c)
{
    std::vector<double> d(c.edge_count());
    for (std::size_t j = 0; j < c.edge_count(); ++j) d[j] = point_segment_distance(p, c.edge_start(j), c.edge_end(j));
    return d;
}

double smallest(const std::vector<double>& d) { return *std::min_element(d.begin(), d.end()); }

} // namespace

double directed_hausdorff(const PolyCurve& a, const PolyCurve& b)
{
    // g(t) = dist(a(t), b) is 1-Lipschitz in arc length, so on a piece of
    // length L with end values g0, g1 the supremum is at most (g0+g1+L)/2.
    // Each distance to a single segment of b is convex along the piece, so
    // min_j max(d_j(t0), d_j(t1)) bounds it too; that bound is exact where
    // the two supports overlap.
    const double scale = std::max(a.diameter(), b.diameter());
    const double tol = 1e-12 * std::max(scale, 1e-300);
    double best = 0;
    struct Piece {
        Vec3 p0, p1;
        std::vector<double> d0, d1;
    };
    std::vector<Piece> stack;
    for (std::size_t i = 0; i < a.edge_count(); ++i) {
        Piece piece{a.edge_start(i), a.edge_end(i), segment_distances(a.edge_start(i), b),
                    segment_distances(a.edge_end(i), b)};
        best = std::max({best, smallest(piece.d0), smallest(piece.d1)});
        stack.push_back(std::move(piece));
    }
    while (!stack.empty()) {
        Piece piece = std::move(stack.back());
        stack.pop_back();
        const double g0 = smallest(piece.d0), g1 = smallest(piece.d1);
        double bound = 0.5 * (g0 + g1 + distance(piece.p0, piece.p1));
        for (std::size_t j = 0; j < piece.d0.size(); ++j) bound = std::min(bound, std::max(piece.d0[j], piece.d1[j]));
        if (bound <= best + tol) continue;
        const Vec3 mid = (piece.p0 + piece.p1) * 0.5;
        auto dm = segment_distances(mid, b);
        best = std::max(best, smallest(dm));
        stack.push_back({piece.p0, mid, std::move(piece.d0), dm});
        stack.push_back({mid, piece.p1, std::move(dm), std::move(piece.d1)});
    }
    return best;
}

double hausdorff(const PolyCurve& a, const PolyCurve& b)
{
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double tube_radius(const PolyCurve& curve)
{
    double best = std::numeric_limits<double>::infinity();
    const double tol = 1e-12 * curve.diameter();
    for (std::size_t i = 0; i < curve.edge_count(); ++i) {
        for (std::size_t j = i + 1; j < curve.edge_count(); ++j) {
            if (curve.adjacent_edges(i, j)) continue;
            const auto sp = segment_segment(curve.edge_start(i), curve.edge_end(i), curve.edge_start(j), curve.edge_end(j));
            if (sp.distance <= tol)
                throw InputError("edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect",
                                 "self_intersection");
            best = std::min(best, sp.distance);
        }
    }
    return 0.5 * best;
}

OpenCurve open_at(const PolyCurve& knot, std::size_t x)
{
    if (!knot.closed()) throw InputError("open_at needs a closed curve");
    const std::size_t n = knot.vertex_count();
    if (x >= n) throw InputError("vertex index " + std::to_string(x) + " out of range", "bad_index");
    std::vector<Vec3> v;
    v.reserve(n);
    for (std::size_t k = 0; k < n; ++k) v.push_back(knot.vertex((x + k) % n));
    OpenOrigin origin{knot.label(), x, (x + n - 1) % n, x};
    return OpenCurve(PolyCurve(std::move(v), false, knot.label() + "@" + std::to_string(x)), origin);
}

std::vector<OpenCurve> sample_neighborhood(const PolyCurve& knot, std::size_t x, double h, std::size_t n,
                                           std::uint64_t seed, const NeighborhoodOptions& options)
{
    if (!knot.closed()) throw InputError("sample_neighborhood needs a closed curve");
    if (x >= knot.vertex_count()) throw InputError("vertex index out of range", "bad_index");
    if (!(h > 0)) throw InputError("h must be positive");
    if (n < 1) throw InputError("sample count must be at least 1");
    const double tube = tube_radius(knot);
    if (h >= tube) {
        std::ostringstream msg;
        msg << "h = " << h << " is not below the tube radius " << tube
            << "; choose h as a fraction of the tube radius (default 0.1)";
        throw ComputationRefused(msg.str(), "h_too_large");
    }
    const OpenCurve base = open_at(knot, x);
    const double amp = options.amplitude * h / std::sqrt(3.0);
    const double tol = 1e-12 * knot.diameter();
    std::vector<OpenCurve> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, "neighborhood", {x, i}));
        bool accepted = false;
        for (int attempt = 0; attempt < options.max_attempts && !accepted; ++attempt) {
            std::vector<Vec3> jittered = knot.vertices();
            double moved = 0;
            for (Vec3& p : jittered) {
                const Vec3 delta{rng.uniform(-amp, amp), rng.uniform(-amp, amp), rng.uniform(-amp, amp)};
                moved = std::max(moved, norm(delta));
                p += delta;
            }
            // Points of a jittered edge move by a convex combination of the
            // endpoint displacements, so max |delta| < h bounds the
            // Hausdorff distance to K_x (and keeps the homotopy in the tube).
            if (moved >= h || !is_simple(jittered, true, tol)) continue;
            PolyCurve closed(std::move(jittered), true, knot.label());
            OpenCurve sample = open_at(closed, x);
            OpenOrigin origin = *sample.origin();
            out.emplace_back(sample.curve().with_label(base.curve().label() + "#" + std::to_string(i)), origin);
            accepted = true;
        }
        if (!accepted) throw SamplingError("neighborhood sample " + std::to_string(i) + " rejected too often");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generators

PolyCurve make_planar_ngon(int n, double radius)
{
    if (n < 3) throw InputError("planar_ngon needs n >= 3");
    if (!(radius > 0)) throw InputError("radius must be positive");
    std::vector<Vec3> v;
    for (int k = 0; k < n; ++k) {
        const double a = 2 * std::numbers::pi * k / n;
        v.push_back({radius * std::cos(a), radius * std::sin(a), 0});
    }
    return PolyCurve(std::move(v), true, "planar_ngon(" + std::to_string(n) + ")");
}

PolyCurve make_torus_knot(int p, int q, int n, double major, double minor)
{
    if (p < 1 || q < 1 || std::gcd(p, q) != 1) throw InputError("torus_knot needs coprime positive p, q");
    if (n < 3) throw InputError("torus_knot needs n >= 3");
    std::vector<Vec3> v;
    for (int k = 0; k < n; ++k) {
        const double t = 2 * std::numbers::pi * k / n;
        const double r = major + minor * std::cos(q * t);
        v.push_back({r * std::cos(p * t), r * std::sin(p * t), minor * std::sin(q * t)});
    }
    return PolyCurve(std::move(v), true,
                     "torus_knot(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(n) + ")");
}

PolyCurve make_braid_closure(const std::vector<int>& word, int strands)
{
    if (strands < 1) throw InputError("braid needs at least one strand");
    for (int g : word)
        if (g == 0 || std::abs(g) >= strands) throw InputError("braid generator out of range");
    const std::size_t slots = std::max<std::size_t>(word.size(), 8);
    const double dtheta = 2 * std::numbers::pi / static_cast<double>(slots);
    const double lift = 0.3;
    auto point = [](double r, double theta, double z) { return Vec3{r * std::cos(theta), r * std::sin(theta), z}; };
    auto radius = [](double pos) { return 2.0 + pos; };

    std::vector<Vec3> v;
    int pos = 0;
    int rounds = 0;
    do {
        for (std::size_t j = 0; j < slots; ++j) {
            const double t0 = dtheta * static_cast<double>(j);
            const int g = j < word.size() ? word[j] : 0;
            const int lo = std::abs(g) - 1;
            int next = pos;
            double z = 0;
            if (g != 0 && (pos == lo || pos == lo + 1)) {
                next = pos == lo ? lo + 1 : lo;
                // Positive generators carry the outward-moving strand over.
                const bool outward = next > pos;
                z = (outward == (g > 0)) ? lift : -lift;
            }
            for (int k = 0; k < 3; ++k) {
                const double f = k / 3.0;
                const double r = radius(pos + (next - pos) * f);
                v.push_back(point(r, t0 + dtheta * f, k == 0 ? 0.0 : z));
            }
            pos = next;
        }
        ++rounds;
    } while (pos != 0 && rounds <= strands);
    if (rounds != strands) throw InputError("braid closure has more than one component");
    std::string label = "braid(";
    for (std::size_t i = 0; i < word.size(); ++i) label += (i ? "," : "") + std::to_string(word[i]);
    return PolyCurve(std::move(v), true, label + ")");
}

PolyCurve make_curve(const std::string& kind, const std::vector<double>& params, const std::string& path)
{
    auto need = [&](std::size_t k) {
        if (params.size() < k) throw InputError(kind + " needs " + std::to_string(k) + " parameters");
    };
    if (kind == "planar_ngon") {
        need(1);
        return make_planar_ngon(static_cast<int>(params[0]), params.size() > 1 ? params[1] : 1.0);
    }
    if (kind == "torus_knot") {
        need(3);
        return make_torus_knot(static_cast<int>(params[0]), static_cast<int>(params[1]), static_cast<int>(params[2]));
    }
    if (kind == "braid") {
        need(2);
        std::vector<int> word;
        for (std::size_t i = 1; i < params.size(); ++i) word.push_back(static_cast<int>(params[i]));
        return make_braid_closure(word, static_cast<int>(params[0]));
    }
    if (kind == "from_file") return read_curve(path);
    throw InputError("unknown curve kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// File format

PolyCurve parse_curve(const std::string& text, const std::string& label)
{
    std::istringstream in(text);
    std::string line;
    std::optional<bool> closed;
    std::vector<Vec3> v;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!closed) {
            if (first == "open") closed = false;
            else if (first == "closed") closed = true;
            else throw InputError("line " + std::to_string(lineno) + ": expected 'open' or 'closed'", "malformed_file");
            continue;
        }
        Vec3 p;
        std::istringstream full(line);
        std::string extra;
        if (!(full >> p.x >> p.y >> p.z) || (full >> extra))
            throw InputError("line " + std::to_string(lineno) + ": expected three numbers", "malformed_file");
        v.push_back(p);
    }
    if (!closed) throw InputError("missing 'open'/'closed' header", "malformed_file");
    return PolyCurve(std::move(v), *closed, label);
}

PolyCurve read_curve(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot read curve file '" + path + "'", "io_error");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string label = path;
    if (auto slash = label.find_last_of('/'); slash != std::string::npos) label = label.substr(slash + 1);
    if (auto dot = label.rfind('.'); dot != std::string::npos && dot > 0) label = label.substr(0, dot);
    return parse_curve(buf.str(), label);
}

std::string format_curve(const PolyCurve& curve)
{
    std::ostringstream out;
    if (!curve.label().empty()) out << "# " << curve.label() << "\n";
    out << (curve.closed() ? "closed" : "open") << "\n";
    out << std::setprecision(17);
    for (const Vec3& p : curve.vertices()) out << p.x << " " << p.y << " " << p.z << "\n";
    return out.str();
}

void write_curve(const PolyCurve& curve, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'", "io_error");
    out << format_curve(curve);
}

std::string data_dir()
{
    if (const char* env = std::getenv("KNOTSPEC_DATA"); env && *env) return env;
    return KNOTSPEC_DEFAULT_DATA_DIR;
}

PolyCurve load_bundled(const std::string& name)
{
    return read_curve(data_dir() + "/" + name + ".txt");
}

} // namespace knotspec
