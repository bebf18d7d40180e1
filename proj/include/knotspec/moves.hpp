#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knotspec/diagram.hpp"
#include "knotspec/errors.hpp"
#include "knotspec/rng.hpp"

namespace knotspec {

enum class MoveKind { r1_remove, r2_remove, r3, r1_insert, r2_insert };

const char* to_string(MoveKind kind);

/// A Reidemeister move on a diagram. Removal and R3 moves name crossings;
/// insertions name arcs (arc j ends at event j).
///
///   r1_remove: a
///   r2_remove: a, b
///   r3:        a, b, c (the triangle's crossings)
///   r1_insert: arc a; first passage over iff `over_first`; crossing sign `sign`
///   r2_insert: arcs a, b; strand a passes over iff `over_first`; the two new
///              crossings x, y are met in order x, y on arc a and in order
///              (reversed ? y, x : x, y) on arc b; x has sign `sign`, y the
///              opposite. When a == b, `b_first` puts b's block first.
struct Move {
    MoveKind kind = MoveKind::r1_remove;
    int a = -1, b = -1, c = -1;
    bool over_first = true;
    int sign = 1;
    bool reversed = false;
    bool b_first = false;

    std::string describe() const;
    bool operator==(const Move&) const = default;
};

/// Rejected move with the reason in what().
class MoveError : public InputError {
  public:
    explicit MoveError(const std::string& what) : InputError(what, "invalid_move") {}
};

/// Apply a move. Sites must be valid and endpoint-avoiding: every removal
/// or R3 move needs a monogon/bigon/triangle face built from arcs between
/// crossings, so no disk used by a move contains the leg or the head.
/// Throws MoveError otherwise.
Diagram apply_move(const Diagram& d, const Move& m);

/// All applicable removal (R1, R2) and R3 moves, in deterministic order.
std::vector<Move> reducing_moves(const Diagram& d);
std::vector<Move> r3_moves(const Diagram& d);

/// Draw a random valid move (insertions included). R1 and R2 inserts are
/// validated by checking that removing them returns the input. Returns
/// nullopt only if no candidate was found within a bounded number of tries.
std::optional<Move> random_move(const Diagram& d, Rng& rng, int max_crossings = 12);

struct SimplifyOptions {
    int budget = 500;   ///< total moves tried, R3 exploration included
    int r3_depth = 3;
};

struct SimplifyResult {
    Diagram diagram;
    int moves_used = 0;
    bool budget_exhausted = false;
    int initial_height = 0;
    int final_height = 0;
    /// Minimum diagrammatic height over every diagram visited; an upper
    /// bound on the knotoid's height.
    int height_bound = 0;
    /// Crossing-reducing steps that raised the diagrammatic height.
    int height_increases = 0;
};

/// Greedy R1/R2 reduction interleaved with breadth-limited R3 exploration
/// (memoized on canonical codes, ties broken by smallest code).
SimplifyResult simplify(const Diagram& d, const SimplifyOptions& options = {});

} // namespace knotspec
