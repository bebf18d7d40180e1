#include "knotspec/moves.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_set>

#include "knotspec/errors.hpp"

namespace knotspec {

namespace {

struct ArcEnds {
    int start = -1; ///< event index, -1 at the leg
    int end = -1;   ///< event index, -1 at the head
};

ArcEnds arc_ends(const Diagram& d, int j)
{
    const int m = static_cast<int>(d.events().size());
    if (d.closed()) return {(j - 1 + m) % m, j};
    return {j >= 1 ? j - 1 : -1, j < m ? j : -1};
}

const Event& event_at(const Diagram& d, int i) { return d.events()[static_cast<std::size_t>(i)]; }

Diagram delete_crossings(const Diagram& d, std::initializer_list<int> gone)
{
    std::vector<Event> ev;
    for (const Event& e : d.events())
        if (std::find(gone.begin(), gone.end(), e.crossing) == gone.end()) ev.push_back(e);
    std::vector<int> relabel(static_cast<std::size_t>(d.crossing_count()), -1);
    std::vector<int> signs;
    std::vector<bool> virt;
    for (int x = 0; x < d.crossing_count(); ++x) {
        if (std::find(gone.begin(), gone.end(), x) != gone.end()) continue;
        relabel[static_cast<std::size_t>(x)] = static_cast<int>(signs.size());
        signs.push_back(d.sign(x));
        virt.push_back(d.is_virtual(x));
    }
    for (Event& e : ev) e.crossing = relabel[static_cast<std::size_t>(e.crossing)];
    return Diagram(std::move(ev), std::move(signs), d.closed(), std::move(virt));
}

bool is_monogon(const Diagram& d, const std::vector<int>& face, int x)
{
    if (face.size() != 1) return false;
    const ArcEnds ae = arc_ends(d, face[0] / 2);
    if (ae.start < 0 || ae.end < 0) return false;
    return event_at(d, ae.start).crossing == x && event_at(d, ae.end).crossing == x;
}

// A bigon face between x and y whose arcs are over-over and under-under.
bool is_r2_bigon(const Diagram& d, const std::vector<int>& face, int x, int y)
{
    if (face.size() != 2 || face[0] / 2 == face[1] / 2) return false;
    int over_arcs = 0, under_arcs = 0;
    for (int dart : face) {
        const ArcEnds ae = arc_ends(d, dart / 2);
        if (ae.start < 0 || ae.end < 0) return false;
        const Event& s = event_at(d, ae.start);
        const Event& e = event_at(d, ae.end);
        const bool ends_ok = (s.crossing == x && e.crossing == y) || (s.crossing == y && e.crossing == x);
        if (!ends_ok) return false;
        if (s.over != e.over) return false;
        (s.over ? over_arcs : under_arcs)++;
    }
    return over_arcs == 1 && under_arcs == 1 && d.sign(x) == -d.sign(y) && !d.is_virtual(x) && !d.is_virtual(y);
}

// Triangle face usable for R3; fills the crossing triple (sorted).
bool r3_triangle(const Diagram& d, const std::vector<int>& face, std::array<int, 3>& crossings)
{
    if (face.size() != 3) return false;
    std::set<int> arcs, xs;
    int oo = 0, uu = 0, mixed = 0;
    for (int dart : face) {
        const int j = dart / 2;
        arcs.insert(j);
        const ArcEnds ae = arc_ends(d, j);
        if (ae.start < 0 || ae.end < 0) return false;
        const Event& s = event_at(d, ae.start);
        const Event& e = event_at(d, ae.end);
        if (s.crossing == e.crossing) return false;
        if (d.is_virtual(s.crossing) || d.is_virtual(e.crossing)) return false;
        xs.insert(s.crossing);
        xs.insert(e.crossing);
        if (s.over && e.over) ++oo;
        else if (!s.over && !e.over) ++uu;
        else ++mixed;
    }
    if (arcs.size() != 3 || xs.size() != 3 || oo != 1 || uu != 1 || mixed != 1) return false;
    std::copy(xs.begin(), xs.end(), crossings.begin());
    return true;
}

// Insert blocks of events on arcs. Blocks for the same arc keep the given order.
Diagram insert_blocks(const Diagram& d, const std::vector<std::pair<int, std::vector<Event>>>& blocks,
                      std::vector<int> new_signs)
{
    const int m = static_cast<int>(d.events().size());
    std::vector<Event> ev;
    for (int j = 0; j <= m; ++j) {
        for (const auto& [arc, block] : blocks)
            if (arc == j || (d.closed() && arc == m && j == 0)) ev.insert(ev.end(), block.begin(), block.end());
        if (j < m) ev.push_back(event_at(d, j));
    }
    std::vector<int> signs = d.signs();
    std::vector<bool> virt;
    for (int x = 0; x < d.crossing_count(); ++x) virt.push_back(d.is_virtual(x));
    for (int s : new_signs) {
        signs.push_back(s);
        virt.push_back(false);
    }
    return Diagram(std::move(ev), std::move(signs), d.closed(), std::move(virt));
}

bool has_r1_site(const Diagram& d)
{
    const FaceStructure fs = faces_unchecked(d);
    for (const auto& f : fs.faces) {
        if (f.size() != 1) continue;
        const ArcEnds ae = arc_ends(d, f[0] / 2);
        if (ae.start >= 0 && ae.end >= 0 && event_at(d, ae.start).crossing == event_at(d, ae.end).crossing)
            return true;
    }
    return false;
}

void check_arc(const Diagram& d, int arc)
{
    if (arc < 0 || arc >= d.arc_count()) throw MoveError("arc index " + std::to_string(arc) + " out of range");
}

void check_crossing(const Diagram& d, int x)
{
    if (x < 0 || x >= d.crossing_count()) throw MoveError("crossing index " + std::to_string(x) + " out of range");
    if (d.is_virtual(x)) throw MoveError("moves on virtual crossings are not supported");
}

} // namespace

const char* to_string(MoveKind kind)
{
    switch (kind) {
    case MoveKind::r1_remove: return "R1-";
    case MoveKind::r2_remove: return "R2-";
    case MoveKind::r3: return "R3";
    case MoveKind::r1_insert: return "R1+";
    case MoveKind::r2_insert: return "R2+";
    }
    return "?";
}

std::string Move::describe() const
{
    std::string s = to_string(kind);
    switch (kind) {
    case MoveKind::r1_remove: return s + " crossing " + std::to_string(a);
    case MoveKind::r2_remove: return s + " crossings " + std::to_string(a) + "," + std::to_string(b);
    case MoveKind::r3:
        return s + " crossings " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
    case MoveKind::r1_insert:
        return s + " arc " + std::to_string(a) + (over_first ? " over" : " under") + (sign > 0 ? " +" : " -");
    case MoveKind::r2_insert:
        return s + " arcs " + std::to_string(a) + "," + std::to_string(b) + (over_first ? " over" : " under") +
               (sign > 0 ? " +" : " -") + (reversed ? " reversed" : "") + (b_first ? " b-first" : "");
    }
    return s;
}

Diagram apply_move(const Diagram& d, const Move& mv)
{
    switch (mv.kind) {
    case MoveKind::r1_remove: {
        check_crossing(d, mv.a);
        const FaceStructure fs = faces(d);
        for (const auto& f : fs.faces)
            if (is_monogon(d, f, mv.a)) return delete_crossings(d, {mv.a});
        throw MoveError("R1 removal: crossing " + std::to_string(mv.a) + " does not bound a monogon face");
    }
    case MoveKind::r2_remove: {
        check_crossing(d, mv.a);
        check_crossing(d, mv.b);
        if (mv.a == mv.b) throw MoveError("R2 removal needs two distinct crossings");
        const FaceStructure fs = faces(d);
        for (const auto& f : fs.faces)
            if (is_r2_bigon(d, f, mv.a, mv.b)) return delete_crossings(d, {mv.a, mv.b});
        throw MoveError("R2 removal: no bigon face with a consistent over/under pattern between crossings " +
                        std::to_string(mv.a) + " and " + std::to_string(mv.b));
    }
    case MoveKind::r3: {
        std::array<int, 3> want{mv.a, mv.b, mv.c};
        for (int x : want) check_crossing(d, x);
        std::sort(want.begin(), want.end());
        const FaceStructure fs = faces(d);
        for (const auto& f : fs.faces) {
            std::array<int, 3> xs{};
            if (!r3_triangle(d, f, xs) || xs != want) continue;
            std::vector<Event> ev = d.events();
            for (int dart : f) {
                const ArcEnds ae = arc_ends(d, dart / 2);
                std::swap(ev[static_cast<std::size_t>(ae.start)], ev[static_cast<std::size_t>(ae.end)]);
            }
            std::vector<bool> virt(static_cast<std::size_t>(d.crossing_count()), false);
            Diagram out(std::move(ev), d.signs(), d.closed(), std::move(virt));
            if (!out.realizable()) throw AssertionFailure("R3 produced a non-planar diagram from " + d.code());
            return out;
        }
        throw MoveError("R3: crossings do not bound a triangle with one over-over, one under-under and one mixed side");
    }
    case MoveKind::r1_insert: {
        check_arc(d, mv.a);
        if (mv.sign != 1 && mv.sign != -1) throw MoveError("sign must be +1 or -1");
        const int x = d.crossing_count();
        Diagram out = insert_blocks(d, {{mv.a, {{x, mv.over_first}, {x, !mv.over_first}}}}, {mv.sign});
        if (!out.realizable() || !has_r1_site(out)) throw MoveError("R1 insertion does not produce a kink");
        return out;
    }
    case MoveKind::r2_insert: {
        check_arc(d, mv.a);
        check_arc(d, mv.b);
        if (mv.sign != 1 && mv.sign != -1) throw MoveError("sign must be +1 or -1");
        const int x = d.crossing_count(), y = x + 1;
        std::vector<Event> block_a{{x, mv.over_first}, {y, mv.over_first}};
        std::vector<Event> block_b = mv.reversed ? std::vector<Event>{{y, !mv.over_first}, {x, !mv.over_first}}
                                                 : std::vector<Event>{{x, !mv.over_first}, {y, !mv.over_first}};
        std::vector<std::pair<int, std::vector<Event>>> blocks;
        if (mv.a == mv.b && mv.b_first) blocks = {{mv.b, block_b}, {mv.a, block_a}};
        else blocks = {{mv.a, block_a}, {mv.b, block_b}};
        Diagram out = insert_blocks(d, blocks, {mv.sign, -mv.sign});
        if (!out.realizable()) throw MoveError("R2 insertion: arcs do not share a face in this configuration");
        // The new crossings must bound a removable bigon whose removal gives d back.
        const FaceStructure fs = faces(out);
        for (int p = 0; p < out.crossing_count(); ++p)
            for (int q = p + 1; q < out.crossing_count(); ++q)
                for (const auto& f : fs.faces)
                    if (is_r2_bigon(out, f, p, q) && delete_crossings(out, {p, q}) == d) return out;
        throw MoveError("R2 insertion does not produce a removable bigon");
    }
    }
    throw MoveError("unknown move");
}

std::vector<Move> reducing_moves(const Diagram& d)
{
    std::vector<Move> out;
    if (d.crossing_count() == 0) return out;
    const FaceStructure fs = faces(d);
    std::set<int> r1;
    std::set<std::pair<int, int>> r2;
    for (const auto& f : fs.faces) {
        if (f.size() == 1) {
            const ArcEnds ae = arc_ends(d, f[0] / 2);
            if (ae.start >= 0 && ae.end >= 0) {
                const int x = event_at(d, ae.start).crossing;
                if (event_at(d, ae.end).crossing == x && !d.is_virtual(x)) r1.insert(x);
            }
        } else if (f.size() == 2) {
            const ArcEnds ae = arc_ends(d, f[0] / 2);
            if (ae.start < 0 || ae.end < 0) continue;
            int x = event_at(d, ae.start).crossing, y = event_at(d, ae.end).crossing;
            if (x == y) continue;
            if (x > y) std::swap(x, y);
            if (is_r2_bigon(d, f, x, y)) r2.insert({x, y});
        }
    }
    for (int x : r1) out.push_back({MoveKind::r1_remove, x});
    for (auto [x, y] : r2) out.push_back({MoveKind::r2_remove, x, y});
    return out;
}

std::vector<Move> r3_moves(const Diagram& d)
{
    std::vector<Move> out;
    if (d.crossing_count() < 3) return out;
    const FaceStructure fs = faces(d);
    std::set<std::array<int, 3>> seen;
    for (const auto& f : fs.faces) {
        std::array<int, 3> xs{};
        if (r3_triangle(d, f, xs)) seen.insert(xs);
    }
    for (const auto& xs : seen) out.push_back({MoveKind::r3, xs[0], xs[1], xs[2]});
    return out;
}

std::optional<Move> random_move(const Diagram& d, Rng& rng, int max_crossings)
{
    const bool can_grow = d.crossing_count() + 2 <= max_crossings;
    for (int attempt = 0; attempt < 64; ++attempt) {
        const auto kind = static_cast<int>(rng.below(5));
        if (kind == 0 || kind == 1) {
            std::vector<Move> moves = kind == 0 ? reducing_moves(d) : r3_moves(d);
            if (moves.empty()) continue;
            return moves[rng.below(moves.size())];
        }
        if (!can_grow) continue;
        if (kind == 2) {
            Move mv{MoveKind::r1_insert, static_cast<int>(rng.below(static_cast<std::uint64_t>(d.arc_count())))};
            mv.over_first = rng.below(2) == 0;
            mv.sign = rng.below(2) == 0 ? 1 : -1;
            try {
                apply_move(d, mv);
                return mv;
            } catch (const MoveError&) {
                continue;
            }
        }
        // R2 insertion between two darts of one face.
        const FaceStructure fs = faces(d);
        const auto& face = fs.faces[rng.below(fs.faces.size())];
        const int a = face[rng.below(face.size())] / 2;
        const int b = face[rng.below(face.size())] / 2;
        Move mv{MoveKind::r2_insert, a, b};
        mv.over_first = rng.below(2) == 0;
        mv.sign = rng.below(2) == 0 ? 1 : -1;
        const bool flip = rng.below(2) == 0;
        for (int variant = 0; variant < 4; ++variant) {
            mv.reversed = ((variant & 1) != 0) != flip;
            mv.b_first = (variant & 2) != 0;
            if (a != b && mv.b_first) continue;
            try {
                apply_move(d, mv);
                return mv;
            } catch (const MoveError&) {
            }
        }
    }
    return std::nullopt;
}

SimplifyResult simplify(const Diagram& d, const SimplifyOptions& options)
{
    SimplifyResult res{d};
    Diagram cur = d;
    int height = diagrammatic_height(cur);
    res.initial_height = height;
    res.height_bound = height;

    auto spend = [&]() {
        if (res.moves_used >= options.budget) {
            res.budget_exhausted = true;
            return false;
        }
        ++res.moves_used;
        return true;
    };

    while (cur.crossing_count() > 0 && !res.budget_exhausted) {
        // Greedy: among available removals pick the result with the smallest
        // (height, code).
        std::vector<Move> moves = reducing_moves(cur);
        if (!moves.empty()) {
            if (!spend()) break;
            std::optional<Diagram> best;
            int best_h = 0;
            for (const Move& mv : moves) {
                Diagram next = apply_move(cur, mv);
                const int h = diagrammatic_height(next);
                if (!best || std::tie(h, next.code()) < std::tie(best_h, best->code())) {
                    best = std::move(next);
                    best_h = h;
                }
            }
            if (best_h > height) ++res.height_increases;
            cur = std::move(*best);
            height = best_h;
            res.height_bound = std::min(res.height_bound, height);
            continue;
        }

        // Breadth-limited R3 search for a diagram that admits a removal.
        std::unordered_set<std::string> visited{cur.code()};
        std::vector<Diagram> level{cur};
        std::optional<Diagram> found;
        for (int depth = 1; depth <= options.r3_depth && !found && !res.budget_exhausted; ++depth) {
            std::vector<Diagram> next_level;
            for (const Diagram& s : level) {
                for (const Move& mv : r3_moves(s)) {
                    if (!spend()) break;
                    Diagram t = apply_move(s, mv);
                    if (visited.insert(t.code()).second) next_level.push_back(std::move(t));
                }
                if (res.budget_exhausted) break;
            }
            std::sort(next_level.begin(), next_level.end(),
                      [](const Diagram& x, const Diagram& y) { return x.code() < y.code(); });
            for (const Diagram& t : next_level) {
                if (!reducing_moves(t).empty()) {
                    found = t;
                    break;
                }
            }
            level = std::move(next_level);
        }
        if (!found) break;
        cur = std::move(*found);
        const int h = diagrammatic_height(cur);
        if (h != height) ++res.height_increases; // R3 should leave the height unchanged
        height = h;
        res.height_bound = std::min(res.height_bound, height);
    }
    res.diagram = cur;
    res.final_height = height;
    return res;
}

} // namespace knotspec
