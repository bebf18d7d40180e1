#include "knotspec/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <unordered_map>

#include "knotspec/errors.hpp"

namespace knotspec {

namespace {

char role_char(const Event& e, bool is_virtual)
{
    if (is_virtual) return e.over ? 'V' : 'v';
    return e.over ? 'O' : 'U';
}

// Relabel by first appearance starting from `start` (cyclically when the
// diagram is closed) and render the code body.
std::string render(const std::vector<Event>& events, const std::vector<int>& signs, const std::vector<bool>& virt,
                   std::size_t start)
{
    std::vector<int> label(signs.size(), 0);
    int next = 0;
    std::string out;
    out.reserve(events.size() * 4);
    const std::size_t m = events.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Event& e = events[(start + i) % m];
        auto c = static_cast<std::size_t>(e.crossing);
        if (label[c] == 0) label[c] = ++next;
        out += role_char(e, virt[c]);
        out += std::to_string(label[c]);
        out += signs[c] > 0 ? '+' : '-';
    }
    return out;
}

} // namespace

Diagram::Diagram(std::vector<Event> events, std::vector<int> signs, bool closed, std::vector<bool> is_virtual)
    : closed_(closed)
{
    const std::size_t n = signs.size();
    if (is_virtual.empty()) is_virtual.assign(n, false);
    if (is_virtual.size() != n) throw InputError("diagram: virtual flags do not match crossing count", "bad_code");
    std::vector<int> over_count(n, 0), under_count(n, 0);
    for (const Event& e : events) {
        if (e.crossing < 0 || static_cast<std::size_t>(e.crossing) >= n)
            throw InputError("diagram: crossing label out of range", "bad_code");
        (e.over ? over_count : under_count)[static_cast<std::size_t>(e.crossing)]++;
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (over_count[c] != 1 || under_count[c] != 1)
            throw InputError("diagram: crossing " + std::to_string(c) + " must appear once over and once under", "bad_code");
        if (signs[c] != 1 && signs[c] != -1) throw InputError("diagram: crossing sign must be +1 or -1", "bad_code");
    }

    // Relabel by first appearance.
    std::vector<int> relabel(n, -1);
    int next = 0;
    for (Event& e : events) {
        auto& r = relabel[static_cast<std::size_t>(e.crossing)];
        if (r < 0) r = next++;
        e.crossing = r;
    }
    signs_.assign(n, 1);
    virtual_.assign(n, false);
    for (std::size_t c = 0; c < n; ++c) {
        signs_[static_cast<std::size_t>(relabel[c])] = signs[c];
        virtual_[static_cast<std::size_t>(relabel[c])] = is_virtual[c];
    }
    events_ = std::move(events);
    finalize();
}

void Diagram::finalize()
{
    const std::size_t m = events_.size();
    std::size_t best_start = 0;
    std::string best = render(events_, signs_, virtual_, 0);
    if (closed_) {
        for (std::size_t s = 1; s < m; ++s) {
            std::string cand = render(events_, signs_, virtual_, s);
            if (cand < best) {
                best = std::move(cand);
                best_start = s;
            }
        }
    }
    if (best_start != 0) {
        std::rotate(events_.begin(), events_.begin() + static_cast<std::ptrdiff_t>(best_start), events_.end());
        std::vector<int> relabel(signs_.size(), -1);
        int next = 0;
        for (Event& e : events_) {
            auto& r = relabel[static_cast<std::size_t>(e.crossing)];
            if (r < 0) r = next++;
            e.crossing = r;
        }
        std::vector<int> s(signs_.size());
        std::vector<bool> v(signs_.size());
        for (std::size_t c = 0; c < signs_.size(); ++c) {
            s[static_cast<std::size_t>(relabel[c])] = signs_[c];
            v[static_cast<std::size_t>(relabel[c])] = virtual_[c];
        }
        signs_ = std::move(s);
        virtual_ = std::move(v);
    }
    positions_.assign(signs_.size(), {-1, -1});
    for (std::size_t i = 0; i < m; ++i) {
        auto& p = positions_[static_cast<std::size_t>(events_[i].crossing)];
        (p[0] < 0 ? p[0] : p[1]) = static_cast<int>(i);
    }
    code_ = (closed_ ? "c:" : "k:") + best;
}

Diagram Diagram::parse(const std::string& code)
{
    if (code.size() < 2 || code[1] != ':' || (code[0] != 'k' && code[0] != 'c'))
        throw InputError("diagram code must start with 'k:' or 'c:'", "bad_code");
    const bool closed = code[0] == 'c';
    std::vector<Event> events;
    std::unordered_map<long, int> ids;
    std::vector<int> signs;
    std::vector<bool> virt;
    std::vector<int> seen_virtual; // -1 unknown, 0 classical, 1 virtual
    std::size_t i = 2;
    while (i < code.size()) {
        const char role = code[i++];
        if (role != 'O' && role != 'U' && role != 'V' && role != 'v')
            throw InputError("diagram code: bad role character '" + std::string(1, role) + "'", "bad_code");
        std::size_t j = i;
        while (j < code.size() && std::isdigit(static_cast<unsigned char>(code[j]))) ++j;
        if (j == i || j - i > 9) throw InputError("diagram code: bad crossing label", "bad_code");
        const long label = std::stol(code.substr(i, j - i));
        if (j >= code.size() || (code[j] != '+' && code[j] != '-'))
            throw InputError("diagram code: missing sign", "bad_code");
        const int sign = code[j] == '+' ? 1 : -1;
        i = j + 1;
        const bool is_virtual = role == 'V' || role == 'v';
        auto [it, inserted] = ids.emplace(label, static_cast<int>(signs.size()));
        if (inserted) {
            signs.push_back(sign);
            virt.push_back(is_virtual);
        } else {
            const auto c = static_cast<std::size_t>(it->second);
            if (signs[c] != sign) throw InputError("diagram code: inconsistent sign at a crossing", "bad_code");
            if (virt[c] != is_virtual) throw InputError("diagram code: mixed virtual flag at a crossing", "bad_code");
        }
        events.push_back({it->second, role == 'O' || role == 'V'});
    }
    Diagram d(std::move(events), std::move(signs), closed, std::move(virt));
    if (!d.realizable()) throw StructuralError("diagram code is not planar: " + code);
    return d;
}

bool Diagram::has_virtual() const
{
    return std::any_of(virtual_.begin(), virtual_.end(), [](bool b) { return b; });
}

int Diagram::arc_count() const
{
    const int m = static_cast<int>(events_.size());
    if (closed_) return std::max(m, 1);
    return m + 1;
}

Diagram Diagram::mirrored() const
{
    std::vector<Event> ev = events_;
    for (Event& e : ev) e.over = !e.over;
    std::vector<int> s = signs_;
    for (int& x : s) x = -x;
    return Diagram(std::move(ev), std::move(s), closed_, virtual_);
}

bool Diagram::realizable() const
{
    return faces_unchecked(*this).euler_characteristic() == 2;
}

FaceStructure faces_unchecked(const Diagram& d)
{
    FaceStructure fs;
    const auto& ev = d.events();
    const int m = static_cast<int>(ev.size());
    const int c = d.crossing_count();
    const int arcs = d.arc_count();
    fs.edge_count = arcs;
    fs.vertex_count = c + (d.closed() ? 0 : 2);
    const int H = 2 * arcs;

    if (d.closed() && m == 0) {
        // A lone circle: one vertex-free loop splitting the sphere in two.
        fs.vertex_count = 1;
        fs.face_of_dart = {0, 1};
        fs.faces = {{0}, {1}};
        return fs;
    }

    auto in_he = [&](int k) { return 2 * k + 1; };
    auto out_he = [&](int k) { return d.closed() ? 2 * ((k + 1) % m) : 2 * (k + 1); };

    // cw_next for every half-edge.
    std::vector<int> cw(static_cast<std::size_t>(H));
    for (int h = 0; h < H; ++h) cw[static_cast<std::size_t>(h)] = h; // endpoints stay fixed
    for (int x = 0; x < c; ++x) {
        const auto pos = d.positions(x);
        const int p = ev[static_cast<std::size_t>(pos[0])].over ? pos[0] : pos[1];
        const int q = p == pos[0] ? pos[1] : pos[0];
        const int o_in = in_he(p), o_out = out_he(p), u_in = in_he(q), u_out = out_he(q);
        std::array<int, 4> rot = d.sign(x) > 0 ? std::array<int, 4>{o_out, u_out, o_in, u_in}
                                               : std::array<int, 4>{o_out, u_in, o_in, u_out};
        for (int i = 0; i < 4; ++i) cw[static_cast<std::size_t>(rot[static_cast<std::size_t>(i)])] = rot[static_cast<std::size_t>((i + 3) % 4)];
    }

    fs.face_of_dart.assign(static_cast<std::size_t>(H), -1);
    for (int start = 0; start < H; ++start) {
        if (fs.face_of_dart[static_cast<std::size_t>(start)] >= 0) continue;
        const int f = static_cast<int>(fs.faces.size());
        fs.faces.emplace_back();
        int dart = start;
        while (fs.face_of_dart[static_cast<std::size_t>(dart)] < 0) {
            fs.face_of_dart[static_cast<std::size_t>(dart)] = f;
            fs.faces.back().push_back(dart);
            dart = cw[static_cast<std::size_t>(dart ^ 1)];
        }
    }
    if (!d.closed()) {
        fs.leg_face = fs.face_of_dart[0];
        fs.head_face = fs.face_of_dart[static_cast<std::size_t>(2 * m + 1)];
    }
    return fs;
}

FaceStructure faces(const Diagram& d)
{
    FaceStructure fs = faces_unchecked(d);
    if (fs.euler_characteristic() != 2)
        throw StructuralError("diagram is not planar (V-E+F = " + std::to_string(fs.euler_characteristic()) + ")");
    return fs;
}

std::vector<std::vector<std::pair<int, int>>> FaceStructure::dual() const
{
    std::vector<std::vector<std::pair<int, int>>> adj(faces.size());
    for (int j = 0; j < edge_count; ++j) {
        const int l = left_of_arc(j), r = right_of_arc(j);
        if (l == r) continue;
        adj[static_cast<std::size_t>(l)].emplace_back(r, j);
        adj[static_cast<std::size_t>(r)].emplace_back(l, j);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

std::vector<PathStep> closure_path(const Diagram& d)
{
    if (d.closed()) return {};
    const FaceStructure fs = faces(d);
    const auto adj = fs.dual();
    std::vector<int> dist(fs.faces.size(), std::numeric_limits<int>::max());
    std::deque<int> queue{fs.head_face};
    dist[static_cast<std::size_t>(fs.head_face)] = 0;
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop_front();
        for (auto [g, arc] : adj[static_cast<std::size_t>(f)]) {
            (void)arc;
            if (dist[static_cast<std::size_t>(g)] == std::numeric_limits<int>::max()) {
                dist[static_cast<std::size_t>(g)] = dist[static_cast<std::size_t>(f)] + 1;
                queue.push_back(g);
            }
        }
    }
    std::vector<PathStep> path;
    int cur = fs.leg_face;
    while (cur != fs.head_face) {
        const int want = dist[static_cast<std::size_t>(cur)] - 1;
        for (auto [g, arc] : adj[static_cast<std::size_t>(cur)]) {
            if (dist[static_cast<std::size_t>(g)] == want) {
                path.push_back({arc, fs.left_of_arc(arc) == cur});
                cur = g;
                break;
            }
        }
    }
    return path;
}

int diagrammatic_height(const Diagram& d)
{
    return static_cast<int>(closure_path(d).size());
}

const char* to_string(ClosureKind kind)
{
    switch (kind) {
    case ClosureKind::over: return "over";
    case ClosureKind::under: return "under";
    case ClosureKind::virtual_: return "virtual";
    }
    return "?";
}

ClosureKind parse_closure_kind(const std::string& name)
{
    if (name == "over") return ClosureKind::over;
    if (name == "under") return ClosureKind::under;
    if (name == "virtual") return ClosureKind::virtual_;
    throw InputError("unknown closure kind '" + name + "' (over, under, virtual)");
}

ClosureResult closure(const Diagram& d, ClosureKind kind)
{
    if (d.closed()) throw InputError("closure: diagram is already closed");
    std::vector<PathStep> path = closure_path(d);
    // The closure arc runs from the head back to the leg.
    std::reverse(path.begin(), path.end());
    for (auto& s : path) s.left_to_right = !s.left_to_right;

    const int c0 = d.crossing_count();
    const int m = static_cast<int>(d.events().size());
    const bool closure_over = kind != ClosureKind::under;
    std::vector<int> signs = d.signs();
    std::vector<bool> virt(static_cast<std::size_t>(c0), false);
    for (int x = 0; x < c0; ++x) virt[static_cast<std::size_t>(x)] = d.is_virtual(x);

    // inserted[j] = new crossing on arc j, or -1.
    std::vector<int> inserted(static_cast<std::size_t>(m + 1), -1);
    std::vector<Event> tail;
    for (const PathStep& s : path) {
        const int x = static_cast<int>(signs.size());
        int sign = s.left_to_right ? 1 : -1;
        if (!closure_over) sign = -sign;
        signs.push_back(sign);
        virt.push_back(kind == ClosureKind::virtual_);
        inserted[static_cast<std::size_t>(s.arc)] = x;
        tail.push_back({x, closure_over});
    }
    std::vector<Event> events;
    events.reserve(static_cast<std::size_t>(m) + 2 * path.size());
    for (int j = 0; j <= m; ++j) {
        if (const int x = inserted[static_cast<std::size_t>(j)]; x >= 0) events.push_back({x, !closure_over});
        if (j < m) events.push_back(d.events()[static_cast<std::size_t>(j)]);
    }
    events.insert(events.end(), tail.begin(), tail.end());

    ClosureResult r{Diagram(std::move(events), std::move(signs), true, std::move(virt)), kind,
                    static_cast<int>(path.size())};
    if (!r.diagram.realizable()) throw AssertionFailure("closure produced a non-planar diagram");
    return r;
}

} // namespace knotspec
