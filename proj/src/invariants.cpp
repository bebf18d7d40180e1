#include "knotspec/invariants.hpp"

#include <algorithm>
#include <map>

#include "knotspec/errors.hpp"

namespace knotspec {

namespace {

constexpr int kLeg = -1;
constexpr int kHead = -2;
constexpr int kUnset = -3;

using State = std::vector<std::pair<int, int>>; // (dangling arc-end, partner), sorted

int lookup(const State& s, int key)
{
    auto it = std::lower_bound(s.begin(), s.end(), std::pair<int, int>{key, kUnset - 1});
    return it != s.end() && it->first == key ? it->second : kUnset;
}

} // namespace

StateGraph StateGraph::from_diagram(const Diagram& d)
{
    StateGraph g;
    const int m = static_cast<int>(d.events().size());
    // Closed diagrams are cut on arc 0: the piece entering event 0 keeps id
    // 0 and the piece leaving event m-1 becomes arc m, as for a knotoid.
    g.arc_count = m + 1;
    g.leg_arc = 0;
    g.head_arc = m;
    g.crossings.resize(static_cast<std::size_t>(d.crossing_count()));
    for (int x = 0; x < d.crossing_count(); ++x) {
        const auto pos = d.positions(x);
        const bool first_over = d.events()[static_cast<std::size_t>(pos[0])].over;
        const int p = first_over ? pos[0] : pos[1];
        const int q = first_over ? pos[1] : pos[0];
        auto& c = g.crossings[static_cast<std::size_t>(x)];
        c.sign = d.sign(x);
        c.is_virtual = d.is_virtual(x);
        c.arcs = {p, p + 1, q, q + 1};
    }
    return g;
}

StateGraph StateGraph::disjoint_union(const StateGraph& other) const
{
    if (leg_arc >= 0 && other.leg_arc >= 0) throw InputError("disjoint union of two open strands is not supported");
    StateGraph g = *this;
    const int shift = arc_count;
    g.arc_count += other.arc_count;
    for (auto c : other.crossings) {
        for (int& a : c.arcs) a += shift;
        g.crossings.push_back(c);
    }
    if (other.leg_arc >= 0) {
        g.leg_arc = other.leg_arc + shift;
        g.head_arc = other.head_arc + shift;
    }
    g.free_loops += other.free_loops;
    return g;
}

int StateGraph::classical_crossings() const
{
    return static_cast<int>(std::count_if(crossings.begin(), crossings.end(), [](const Crossing& c) { return !c.is_virtual; }));
}

int writhe(const Diagram& d)
{
    int w = 0;
    for (int x = 0; x < d.crossing_count(); ++x)
        if (!d.is_virtual(x)) w += d.sign(x);
    return w;
}

LaurentPolynomial bracket(const Diagram& d, int cap)
{
    return bracket(StateGraph::from_diagram(d), cap);
}

// Frontier state sum. Crossings are absorbed one at a time; a state records
// how the arc-ends still dangling at unabsorbed crossings are joined through
// the absorbed part (or to the leg/head), and maps to the polynomial weight
// accumulated by every smoothing leading to it.
LaurentPolynomial bracket(const StateGraph& g, int cap)
{
    const int classical = g.classical_crossings();
    if (classical > cap)
        throw ComputationRefused("bracket: " + std::to_string(classical) + " crossings exceed the cap of " +
                                     std::to_string(cap) + "; simplify first",
                                 "bracket_cap");
    const int ends = 2 * g.arc_count;
    // Location of each arc-end: 4*crossing + port, or kLeg / kHead.
    std::vector<int> loc(static_cast<std::size_t>(ends), kUnset);
    auto place = [&](int end, int where) {
        if (end < 0 || end >= ends) throw InputError("state graph: arc id out of range");
        if (loc[static_cast<std::size_t>(end)] != kUnset) throw InputError("state graph: arc end used twice");
        loc[static_cast<std::size_t>(end)] = where;
    };
    for (std::size_t x = 0; x < g.crossings.size(); ++x) {
        const auto& a = g.crossings[x].arcs;
        const int base = static_cast<int>(4 * x);
        place(2 * a[0] + 1, base + 0);
        place(2 * a[1], base + 1);
        place(2 * a[2] + 1, base + 2);
        place(2 * a[3], base + 3);
    }
    if (g.leg_arc >= 0) {
        place(2 * g.leg_arc, kLeg);
        place(2 * g.head_arc + 1, kHead);
    }
    for (int e = 0; e < ends; ++e)
        if (loc[static_cast<std::size_t>(e)] == kUnset) throw InputError("state graph: dangling arc end");

    const LaurentPolynomial loop = LaurentPolynomial::loop_value();
    std::vector<LaurentPolynomial> loop_pow{LaurentPolynomial(1)};
    std::map<State, LaurentPolynomial> states{{State{}, LaurentPolynomial(1)}};

    for (std::size_t x = 0; x < g.crossings.size(); ++x) {
        const auto& cr = g.crossings[x];
        const std::array<int, 4> pe{2 * cr.arcs[0] + 1, 2 * cr.arcs[1], 2 * cr.arcs[2] + 1, 2 * cr.arcs[3]};

        struct Smoothing {
            std::array<int, 4> partner;
            int exponent;
        };
        // Ports: 0 over-in, 1 over-out, 2 under-in, 3 under-out.
        const Smoothing a_pos{{3, 2, 1, 0}, 1};  // (o_in,u_out) (u_in,o_out)
        const Smoothing b_pos{{2, 3, 0, 1}, -1}; // (o_in,u_in) (o_out,u_out)
        std::vector<Smoothing> options;
        if (cr.is_virtual) options.push_back({{1, 0, 3, 2}, 0});
        else if (cr.sign > 0) options = {a_pos, b_pos};
        else options = {{a_pos.partner, -1}, {b_pos.partner, 1}};

        std::map<State, LaurentPolynomial> next;
        for (const auto& [state, weight] : states) {
            // Outer link of each port: another port of x (encoded -10-port) or a terminal.
            std::array<int, 4> outer{};
            for (int k = 0; k < 4; ++k) {
                int t = lookup(state, pe[static_cast<std::size_t>(k)]);
                if (t == kUnset) {
                    const int other = pe[static_cast<std::size_t>(k)] ^ 1;
                    const int where = loc[static_cast<std::size_t>(other)];
                    if (where == kLeg || where == kHead) t = where;
                    else if (where / 4 == static_cast<int>(x)) t = -10 - where % 4;
                    else t = other;
                } else {
                    for (int j = 0; j < 4; ++j)
                        if (t == pe[static_cast<std::size_t>(j)] && j != k) t = -10 - j;
                }
                outer[static_cast<std::size_t>(k)] = t;
            }
            State base_state;
            base_state.reserve(state.size() + 4);
            for (const auto& kv : state) {
                bool drop = false;
                for (int k = 0; k < 4; ++k)
                    if (kv.first == pe[static_cast<std::size_t>(k)] || kv.second == pe[static_cast<std::size_t>(k)])
                        drop = true;
                if (!drop) base_state.push_back(kv);
            }
            for (const Smoothing& sm : options) {
                std::array<bool, 4> seen{};
                int loops = 0;
                State ns = base_state;
                for (int k = 0; k < 4; ++k) {
                    if (seen[static_cast<std::size_t>(k)]) continue;
                    // Walk from k through its smoothing partner, then outward.
                    auto walk = [&](int from, bool via_smoothing, bool& cycled) {
                        int cur = from;
                        bool smooth = via_smoothing;
                        for (;;) {
                            seen[static_cast<std::size_t>(cur)] = true;
                            const int nxt = smooth ? -10 - sm.partner[static_cast<std::size_t>(cur)]
                                                   : outer[static_cast<std::size_t>(cur)];
                            if (nxt > -10) return nxt; // terminal
                            const int port = -10 - nxt;
                            if (port == from) {
                                cycled = true;
                                return kUnset;
                            }
                            cur = port;
                            smooth = !smooth;
                        }
                    };
                    bool cycled = false;
                    const int t1 = walk(k, true, cycled);
                    if (cycled) {
                        ++loops;
                        continue;
                    }
                    const int t2 = walk(k, false, cycled);
                    if (t1 < 0 && t2 < 0) continue; // open strand completed
                    if (t1 < 0) ns.emplace_back(t2, t1);
                    else if (t2 < 0) ns.emplace_back(t1, t2);
                    else {
                        ns.emplace_back(t1, t2);
                        ns.emplace_back(t2, t1);
                    }
                }
                std::sort(ns.begin(), ns.end());
                while (static_cast<int>(loop_pow.size()) <= loops) loop_pow.push_back(loop_pow.back() * loop);
                LaurentPolynomial w = weight.shifted(sm.exponent);
                if (loops > 0) w *= loop_pow[static_cast<std::size_t>(loops)];
                auto [it, inserted] = next.emplace(std::move(ns), w);
                if (!inserted) it->second += w;
            }
        }
        states = std::move(next);
    }
    if (states.size() != 1 || !states.begin()->first.empty())
        throw AssertionFailure("bracket: state sum did not close up");
    LaurentPolynomial result = states.begin()->second;
    for (int i = 0; i < g.free_loops; ++i) result *= loop;
    return result;
}

LaurentPolynomial jones_normalized(const Diagram& d, int cap)
{
    const int w = writhe(d);
    return bracket(d, cap) * LaurentPolynomial::monomial(w % 2 == 0 ? 1 : -1, -3 * w);
}

std::string Fingerprint::key() const
{
    return "J:" + jones.to_string() + "|U:" + under_jones.to_string() + "|O:" + over_jones.to_string();
}

namespace {

std::optional<LaurentPolynomial> closure_jones(const Diagram& d, ClosureKind kind, const FingerprintOptions& o)
{
    Diagram closed = closure(d, kind).diagram;
    if (closed.crossing_count() > o.cap) closed = simplify(closed, o.simplify).diagram;
    if (closed.crossing_count() > o.cap) return std::nullopt;
    return jones_normalized(closed, o.cap);
}

} // namespace

FingerprintResult fingerprint(const Diagram& d, const FingerprintOptions& options)
{
    if (d.closed()) throw InputError("fingerprint: expected a knotoid (open) diagram");
    FingerprintResult r;
    const SimplifyResult s = simplify(d, options.simplify);
    r.simplified = s.diagram;
    r.raw_height = s.initial_height;
    r.budget_exhausted = s.budget_exhausted;
    r.height_increases = s.height_increases;
    if (s.diagram.crossing_count() > options.cap) return r;
    auto under = closure_jones(s.diagram, ClosureKind::under, options);
    auto over = closure_jones(s.diagram, ClosureKind::over, options);
    if (!under || !over) return r;
    Fingerprint fp;
    fp.jones = jones_normalized(s.diagram, options.cap);
    fp.under_jones = std::move(*under);
    fp.over_jones = std::move(*over);
    fp.height_bound = s.height_bound;
    fp.knot_type = fp.height_bound == 0;
    if (fp.knot_type && fp.under_jones != fp.over_jones)
        throw AssertionFailure("knot-type knotoid with different closures: " + d.code());
    r.key = fp.key();
    r.fingerprint = std::move(fp);
    return r;
}

const FingerprintResult& FingerprintCache::get(const Diagram& d)
{
    auto it = memo_.find(d.code());
    if (it != memo_.end()) return it->second;
    return memo_.emplace(d.code(), fingerprint(d, options_)).first->second;
}

} // namespace knotspec
