#include "knotspec/secants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "knotspec/diagram.hpp"
#include "knotspec/errors.hpp"
#include "knotspec/parallel.hpp"
#include "knotspec/projection.hpp"
#include "knotspec/rng.hpp"

namespace knotspec {

std::string to_string(Alternation a)
{
    switch (a) {
    case Alternation::simple: return "simple";
    case Alternation::flipped: return "flipped";
    case Alternation::alternating: return "alternating";
    }
    return "simple";
}

Alternation parse_alternation(const std::string& s)
{
    if (s == "simple") return Alternation::simple;
    if (s == "flipped") return Alternation::flipped;
    if (s == "alternating") return Alternation::alternating;
    throw InputError("unknown alternation class '" + s + "'");
}

Alternation classify_alternation(const std::array<int, 4>& line_rank)
{
    std::array<int, 4> at{};
    for (int k = 0; k < 4; ++k) at[line_rank[k]] = k;
    int neighbours = 0;
    for (int p = 0; p < 3; ++p) {
        const int gap = (at[p] - at[p + 1] + 4) % 4;
        if (gap == 1 || gap == 3) ++neighbours;
    }
    if (neighbours == 3) return Alternation::simple;
    if (neighbours == 2) return Alternation::flipped;
    return Alternation::alternating;
}

Bilinear transversal_constraint(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1, const Vec3& r0,
                                const Vec3& r1)
{
    // (Q - P) . ((R0 - P) x D) with P = p0 + s U, Q = q0 + t W; the s^2
    // term is U . (U x D) = 0.
    const Vec3 u = p1 - p0, w = q1 - q0, d = r1 - r0;
    const Vec3 base = q0 - p0;
    const Vec3 c0 = cross(r0 - p0, d);
    const Vec3 c1 = cross(u, d);
    Bilinear f;
    f.a = dot(base, c0);
    f.b = -dot(base, c1) - dot(u, c0);
    f.c = dot(w, c0);
    f.e = -dot(w, c1);
    return f;
}

std::map<std::string, std::size_t> QuadrisecantReport::class_counts() const
{
    std::map<std::string, std::size_t> out{{"simple", 0}, {"flipped", 0}, {"alternating", 0}};
    for (const auto& q : secants) ++out[to_string(q.alternation)];
    return out;
}

double quadrisecant_upper_bound(std::size_t edges)
{
    const double n = static_cast<double>(edges);
    return n / 12.0 * (n - 3) * (n - 4) * (n - 5);
}

namespace {

struct LineHit {
    double line = 0; ///< parameter along the (unit) line
    double edge = 0; ///< parameter on the edge, unclamped
    double dist = 0;
    bool ok = false;
};

LineHit line_edge(const Vec3& o, const Vec3& d, const Vec3& e0, const Vec3& e1)
{
    const Vec3 v = e1 - e0;
    const Vec3 w0 = o - e0;
    const double b = dot(d, v), c = dot(v, v), dd = dot(d, w0), e = dot(v, w0);
    const double denom = c - b * b;
    LineHit h;
    if (denom <= 1e-14 * c) return h;
    h.line = (b * e - c * dd) / denom;
    h.edge = (e - b * dd) / denom;
    h.dist = distance(o + d * h.line, e0 + v * h.edge);
    h.ok = true;
    return h;
}

double line_line_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1)
{
    const Vec3 u = a1 - a0, w = b1 - b0;
    const Vec3 n = cross(u, w);
    const double nn = norm(n);
    if (nn <= 1e-12 * norm(u) * norm(w)) return 0; // parallel: no transversal pencil
    return std::abs(dot(b0 - a0, n)) / nn;
}

struct Box {
    double s0, s1, t0, t1;
    int depth;
};

bool same_sign(const Bilinear& f, const Box& b, double eps)
{
    const double v[4] = {f(b.s0, b.t0), f(b.s1, b.t0), f(b.s0, b.t1), f(b.s1, b.t1)};
    bool pos = true, neg = true;
    for (double x : v) {
        if (x <= eps) pos = false;
        if (x >= -eps) neg = false;
    }
    return pos || neg;
}

double coeff_scale(const Bilinear& f) { return std::abs(f.a) + std::abs(f.b) + std::abs(f.c) + std::abs(f.e); }

bool newton(const Bilinear& f, const Bilinear& g, double& s, double& t)
{
    const double sf = coeff_scale(f), sg = coeff_scale(g);
    for (int it = 0; it < 60; ++it) {
        const double F = f(s, t), G = g(s, t);
        const double j11 = f.ds(t), j12 = f.dt(s), j21 = g.ds(t), j22 = g.dt(s);
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) <= 1e-300) return false;
        const double ds = (F * j22 - G * j12) / det;
        const double dt = (j11 * G - j21 * F) / det;
        s -= ds;
        t -= dt;
        if (!std::isfinite(s) || !std::isfinite(t) || std::abs(s) > 10 || std::abs(t) > 10) return false;
        if (std::abs(ds) + std::abs(dt) < 1e-15) break;
    }
    return std::abs(f(s, t)) <= 1e-11 * sf && std::abs(g(s, t)) <= 1e-11 * sg;
}

struct Candidate {
    Quadrisecant q;
    Vec3 plucker_d, plucker_m;
};

struct QuadResult {
    std::vector<Candidate> found;
    bool degenerate = false;
};

QuadResult solve_quadruple(const PolyCurve& curve, const std::array<std::size_t, 4>& e, double tol_abs,
                           const QuadrisecantOptions& options)
{
    QuadResult out;
    auto s0 = [&](int k) { return curve.edge_start(e[k]); };
    auto s1 = [&](int k) { return curve.edge_end(e[k]); };

    // Carrier pair: the most skew of the six pairs.
    int ca = -1, cb = -1;
    double best = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double dist = line_line_distance(s0(i), s1(i), s0(j), s1(j));
            if (dist > best) {
                best = dist;
                ca = i;
                cb = j;
            }
        }
    if (ca < 0 || best <= tol_abs) {
        out.degenerate = true;
        return out;
    }
    int others[2], no = 0;
    for (int k = 0; k < 4; ++k)
        if (k != ca && k != cb) others[no++] = k;
    const Bilinear f = transversal_constraint(s0(ca), s1(ca), s0(cb), s1(cb), s0(others[0]), s1(others[0]));
    const Bilinear g = transversal_constraint(s0(ca), s1(ca), s0(cb), s1(cb), s0(others[1]), s1(others[1]));
    const double ef = 1e-13 * coeff_scale(f), eg = 1e-13 * coeff_scale(g);
    if (coeff_scale(f) == 0 || coeff_scale(g) == 0) {
        out.degenerate = true;
        return out;
    }

    // Breadth-first subdivision. Past leaf_depth, keep refining while too
    // many boxes survive: nearly tangent constraint curves separate once the
    // boxes are smaller than their gap, a genuine family never does.
    std::vector<Box> level{{0, 1, 0, 1, 0}};
    for (int depth = 0;; ++depth) {
        std::vector<Box> alive;
        for (const Box& b : level)
            if (!same_sign(f, b, ef) && !same_sign(g, b, eg)) alive.push_back(b);
        const bool refine = depth < options.leaf_depth || alive.size() > options.leaf_cap;
        if (!refine || alive.empty()) {
            level = std::move(alive);
            break;
        }
        if (depth >= options.max_depth) {
            out.degenerate = true;
            return out;
        }
        level.clear();
        for (const Box& b : alive) {
            const double sm = 0.5 * (b.s0 + b.s1), tm = 0.5 * (b.t0 + b.t1);
            level.push_back({b.s0, sm, b.t0, tm, b.depth + 1});
            level.push_back({sm, b.s1, b.t0, tm, b.depth + 1});
            level.push_back({b.s0, sm, tm, b.t1, b.depth + 1});
            level.push_back({sm, b.s1, tm, b.t1, b.depth + 1});
        }
    }

    std::vector<std::pair<double, double>> roots;
    for (const Box& b : level) {
        double s = 0.5 * (b.s0 + b.s1), t = 0.5 * (b.t0 + b.t1);
        if (!newton(f, g, s, t)) continue;
        if (s < -1e-9 || s > 1 + 1e-9 || t < -1e-9 || t > 1 + 1e-9) continue;
        bool dup = false;
        for (const auto& [rs, rt] : roots)
            if (std::abs(rs - s) + std::abs(rt - t) < 1e-9) dup = true;
        if (!dup) roots.emplace_back(s, t);
    }

    for (const auto& [s, t] : roots) {
        const Vec3 p = s0(ca) + (s1(ca) - s0(ca)) * s;
        const Vec3 qpt = s0(cb) + (s1(cb) - s0(cb)) * t;
        const double len = distance(p, qpt);
        if (len <= tol_abs) continue;
        const Vec3 dir = (qpt - p) / len;
        struct Hit {
            std::size_t edge;
            double edge_param, line_param, dist;
        };
        std::array<Hit, 4> hits{};
        bool ok = true;
        for (int k = 0; k < 4; ++k) {
            const LineHit h = line_edge(p, dir, s0(k), s1(k));
            const double slack = tol_abs / distance(s0(k), s1(k));
            if (!h.ok || h.dist > tol_abs || h.edge < -slack || h.edge > 1 + slack) {
                ok = false;
                break;
            }
            hits[k] = {e[k], std::clamp(h.edge, 0.0, 1.0), h.line, h.dist};
        }
        if (!ok) continue;
        std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
            return x.edge + x.edge_param < y.edge + y.edge_param;
        });
        // Orient so the first point in curve order precedes the last along the line.
        Vec3 d = dir;
        if (hits[0].line_param > hits[3].line_param) {
            d = -d;
            for (auto& h : hits) h.line_param = -h.line_param;
        }
        double first = hits[0].line_param;
        for (const auto& h : hits) first = std::min(first, h.line_param);
        Quadrisecant q;
        q.point = p + d * first; // line params are measured along d from p

        q.direction = d;
        std::array<int, 4> idx{0, 1, 2, 3};
        std::sort(idx.begin(), idx.end(), [&](int x, int y) { return hits[x].line_param < hits[y].line_param; });
        for (int r = 0; r < 4; ++r) q.line_rank[idx[r]] = r;
        for (int k = 0; k < 4; ++k) {
            q.edges[k] = hits[k].edge;
            q.curve_params[k] = static_cast<double>(hits[k].edge) + hits[k].edge_param;
            q.line_params[k] = hits[k].line_param - first;
            q.residual = std::max(q.residual, hits[k].dist);
        }
        q.alternation = classify_alternation(q.line_rank);
        out.found.push_back({q, {}, {}});
    }
    return out;
}

double plucker_gap(const Candidate& a, const Candidate& b, double scale)
{
    const double same = norm(a.plucker_d - b.plucker_d) + norm(a.plucker_m - b.plucker_m) / scale;
    const double flip = norm(a.plucker_d + b.plucker_d) + norm(a.plucker_m + b.plucker_m) / scale;
    return std::min(same, flip);
}

} // namespace

QuadrisecantReport find_quadrisecants(const PolyCurve& curve, const QuadrisecantOptions& options)
{
    if (!(options.tol > 0)) throw InputError("tolerance must be positive");
    QuadrisecantReport report;
    const double diam = curve.diameter();
    const double tol_abs = options.tol * diam;
    report.tolerance = tol_abs;
    const std::size_t ne = curve.edge_count();

    std::vector<std::vector<Candidate>> found(ne);
    std::vector<std::vector<std::array<std::size_t, 4>>> degenerate(ne);
    std::vector<std::uint64_t> counted(ne, 0);
    parallel_for(ne, options.workers, [&](std::size_t i, unsigned) {
        for (std::size_t j = i + 1; j < ne; ++j) {
            if (curve.adjacent_edges(i, j)) continue;
            for (std::size_t k = j + 1; k < ne; ++k) {
                if (curve.adjacent_edges(i, k) || curve.adjacent_edges(j, k)) continue;
                for (std::size_t l = k + 1; l < ne; ++l) {
                    if (curve.adjacent_edges(i, l) || curve.adjacent_edges(j, l) || curve.adjacent_edges(k, l))
                        continue;
                    ++counted[i];
                    const std::array<std::size_t, 4> e{i, j, k, l};
                    QuadResult r = solve_quadruple(curve, e, tol_abs, options);
                    if (r.degenerate) degenerate[i].push_back(e);
                    for (auto& c : r.found) found[i].push_back(std::move(c));
                }
            }
        }
    });

    // Plucker coordinates about the vertex centroid.
    Vec3 centroid;
    for (const Vec3& v : curve.vertices()) centroid += v;
    centroid = centroid / static_cast<double>(curve.vertex_count());
    std::vector<Candidate> all;
    for (std::size_t i = 0; i < ne; ++i) {
        report.quadruples += counted[i];
        for (auto& e : degenerate[i]) report.degenerate.push_back(e);
        for (auto& c : found[i]) {
            c.plucker_d = c.q.direction;
            c.plucker_m = cross(c.q.point - centroid, c.q.direction);
            all.push_back(std::move(c));
        }
    }
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) { return a.q.edges < b.q.edges; });

    const double merge = 100 * options.tol;
    const double ambiguous = 1e4 * options.tol;
    for (const Candidate& c : all) {
        bool dup = false;
        for (const Quadrisecant& kept : report.secants) {
            Candidate k{kept, kept.direction, cross(kept.point - centroid, kept.direction)};
            const double gap = plucker_gap(c, k, diam);
            if (gap <= merge) {
                dup = true;
                break;
            }
            if (gap <= ambiguous)
                report.warnings.push_back("quadrisecants on edges near-coincide; tolerance may be too coarse to separate them");
        }
        if (dup)
            ++report.merged;
        else
            report.secants.push_back(c.q);
    }
    if (!report.degenerate.empty())
        report.warnings.push_back(std::to_string(report.degenerate.size()) +
                                  " edge quadruples have non-isolated common transversals (curve is not generic)");
    return report;
}

Height3Report height3_link(const PolyCurve& knot, const Quadrisecant& q, const Height3Options& options)
{
    if (!knot.closed()) throw InputError("height3_link needs a closed curve");
    if (options.point < 0 || options.point > 3) throw InputError("point must be in 0..3");
    if (!(options.cone > 0) || options.cone >= std::numbers::pi / 2) throw InputError("cone must be in (0, pi/2)");
    const std::size_t n = knot.vertex_count();
    Height3Report out;
    out.opened_edge = q.edges[options.point];
    if (out.opened_edge >= knot.edge_count()) throw InputError("quadrisecant does not belong to this curve");
    out.base = (out.opened_edge + 1) % n;
    out.cone = options.cone;
    out.directions = options.directions;
    const OpenCurve open = open_at(knot, out.base);

    const Vec3 axis = normalized(q.direction);
    const auto [bu, bv] = projection_basis(axis);
    const double cos_max = std::cos(options.cone);
    std::size_t resolved = 0, threes = 0, arc_threes = 0;
    for (std::size_t i = 0; i < options.directions; ++i) {
        Rng rng(derive_seed(options.seed, "cone", {i}));
        const double z = 1 - rng.uniform() * (1 - cos_max);
        const double phi = 2 * std::numbers::pi * rng.uniform();
        const double r = std::sqrt(std::max(0.0, 1 - z * z));
        const Vec3 xi = axis * z + bu * (r * std::cos(phi)) + bv * (r * std::sin(phi));

        RawDiagram raw;
        try {
            raw = project(open.curve(), xi);
        } catch (const DegenerateProjection&) {
            ++out.degenerate;
            continue;
        }
        const int h = diagrammatic_height(raw.to_diagram());
        ++out.height_counts[h];
        out.max_height = std::max(out.max_height, h);
        ++resolved;
        if (h == 3) ++threes;

        // Straight closure arc: the deleted edge, projected.
        const auto [u, v] = projection_basis(xi);
        auto proj = [&](const Vec3& x) { return Vec2{dot(x, u), dot(x, v)}; };
        const Vec2 a = proj(knot.edge_start(out.opened_edge)), b = proj(knot.edge_end(out.opened_edge));
        int crossings = 0;
        for (std::size_t e = 0; e < knot.edge_count(); ++e) {
            if (e == out.opened_edge || knot.adjacent_edges(e, out.opened_edge)) continue;
            const Vec2 c = proj(knot.edge_start(e)), d = proj(knot.edge_end(e));
            const double d1 = cross2(b - a, c - a), d2 = cross2(b - a, d - a);
            const double d3 = cross2(d - c, a - c), d4 = cross2(d - c, b - c);
            if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) ++crossings;
        }
        ++out.closure_arc_counts[crossings];
        if (crossings == 3) ++arc_threes;
        out.max_closure_arc = std::max(out.max_closure_arc, crossings);
    }
    if (resolved) {
        out.height3_fraction = static_cast<double>(threes) / static_cast<double>(resolved);
        out.closure_arc3_fraction = static_cast<double>(arc_threes) / static_cast<double>(resolved);
    }
    return out;
}

} // namespace knotspec
