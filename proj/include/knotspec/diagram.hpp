#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace knotspec {

/// One passage of the curve through a crossing. For virtual crossings the
/// `over` flag only records which passage plays the over role in the
/// rotation system.
struct Event {
    int crossing = 0;
    bool over = false;
    bool operator==(const Event&) const = default;
};

/// Combinatorial knotoid (open) or knot (closed) diagram on S^2: a signed
/// Gauss code read from leg to head. The planar embedding is implied: at a
/// positive crossing the counterclockwise order of half-edges is
/// (over-out, under-out, over-in, under-in); at a negative crossing it is
/// (over-out, under-in, over-in, under-out). A crossing is positive when the
/// over direction rotated +90 degrees points along the under direction.
///
/// Code grammar (canonical form used for hashing and export):
///   code  := ("k" | "c") ":" event*
///   event := role label sign
///   role  := "O" | "U" | "V" | "v"     over, under, virtual (over / under role)
///   label := [1-9][0-9]*               crossings numbered by first appearance
///   sign  := "+" | "-"
/// Closed codes are additionally rotated to the lexicographically smallest
/// cyclic shift. Example: the trivial knotoid is "k:".
class Diagram {
  public:
    /// Trivial knotoid.
    Diagram() = default;
    /// Validates parity (each crossing twice, one over role, one under) and
    /// relabels crossings by first appearance. `signs` and `is_virtual` are
    /// indexed by the input labels.
    Diagram(std::vector<Event> events, std::vector<int> signs, bool closed, std::vector<bool> is_virtual = {});

    static Diagram parse(const std::string& code);

    bool closed() const { return closed_; }
    int crossing_count() const { return static_cast<int>(signs_.size()); }
    const std::vector<Event>& events() const { return events_; }
    int sign(int c) const { return signs_[static_cast<std::size_t>(c)]; }
    const std::vector<int>& signs() const { return signs_; }
    bool is_virtual(int c) const { return virtual_[static_cast<std::size_t>(c)]; }
    bool has_virtual() const;
    /// Event positions of crossing c, first then second passage.
    std::array<int, 2> positions(int c) const { return positions_[static_cast<std::size_t>(c)]; }

    /// Arcs: arc j ends at event j; the last knotoid arc ends at the head.
    int arc_count() const;

    /// Canonical code string (see grammar above).
    const std::string& code() const { return code_; }

    /// Switch every crossing (over <-> under); signs flip, embedding kept.
    Diagram mirrored() const;

    /// Genus-0 check of the implied rotation system.
    bool realizable() const;

    bool operator==(const Diagram& o) const { return code_ == o.code_; }

  private:
    void finalize();

    std::vector<Event> events_;
    std::vector<int> signs_;
    std::vector<bool> virtual_;
    std::vector<std::array<int, 2>> positions_;
    bool closed_ = false;
    std::string code_ = "k:";
};

/// Faces of the planar subdivision and the dual graph.
///
/// Half-edge 2j is the tail of arc j, 2j+1 its head. A dart is named by its
/// starting half-edge; `face_of_dart[d]` is the face on the dart's left.
struct FaceStructure {
    int vertex_count = 0;
    int edge_count = 0;
    std::vector<int> face_of_dart;
    std::vector<std::vector<int>> faces; ///< darts of each face in boundary order
    int leg_face = -1;                   ///< knotoids only
    int head_face = -1;

    int face_count() const { return static_cast<int>(faces.size()); }
    int euler_characteristic() const { return vertex_count - edge_count + face_count(); }
    int left_of_arc(int arc) const { return face_of_dart[static_cast<std::size_t>(2 * arc)]; }
    int right_of_arc(int arc) const { return face_of_dart[static_cast<std::size_t>(2 * arc + 1)]; }
    /// Dual adjacency: for each face, (neighbor face, arc) pairs sorted.
    std::vector<std::vector<std::pair<int, int>>> dual() const;
};

/// Throws StructuralError when the rotation system is not planar.
FaceStructure faces(const Diagram& d);
/// Same, without the planarity check.
FaceStructure faces_unchecked(const Diagram& d);

/// One step of a closure path: the arc crossed and whether the path goes
/// from its left side to its right side.
struct PathStep {
    int arc = 0;
    bool left_to_right = true;
};

/// Shortest dual path from the leg face to the head face; ties broken by the
/// lexicographically smallest face sequence, then the smallest arc index.
std::vector<PathStep> closure_path(const Diagram& d);

/// Minimum number of arcs an end-to-end closure arc must cross in this
/// diagram. Zero iff the diagram is knot-type. Closed diagrams give 0.
int diagrammatic_height(const Diagram& d);

enum class ClosureKind { over, under, virtual_ };

const char* to_string(ClosureKind kind);
ClosureKind parse_closure_kind(const std::string& name);

struct ClosureResult {
    Diagram diagram;        ///< closed diagram
    ClosureKind kind = ClosureKind::under;
    int closure_crossings = 0; ///< crossings added by the closure arc (virtual count for virtual)
};

/// Close the knotoid along closure_path(d). Over/under closures add
/// classical crossings; the virtual closure adds virtual ones.
ClosureResult closure(const Diagram& d, ClosureKind kind);

} // namespace knotspec
