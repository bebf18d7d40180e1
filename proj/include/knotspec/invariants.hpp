#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "knotspec/diagram.hpp"
#include "knotspec/laurent.hpp"
#include "knotspec/moves.hpp"

namespace knotspec {

inline constexpr int kDefaultBracketCap = 24;

/// Port-level view of a diagram used by the state sum. Each crossing lists
/// the arcs at its ports (over-in, over-out, under-in, under-out); an arc
/// enters a crossing at its head and leaves at its tail. At most one open
/// strand, running from the tail of `leg_arc` to the head of `head_arc`.
/// Closed components without crossings are counted in `free_loops`.
struct StateGraph {
    struct Crossing {
        int sign = 1;
        bool is_virtual = false;
        std::array<int, 4> arcs{};
    };
    int arc_count = 0;
    std::vector<Crossing> crossings;
    int leg_arc = -1;
    int head_arc = -1;
    int free_loops = 0;

    /// Knotoids map directly; closed diagrams are cut open on arc 0, which
    /// gives the bracket normalized to 1 on the unknot.
    static StateGraph from_diagram(const Diagram& d);
    /// Split union; at most one operand may have an open strand.
    StateGraph disjoint_union(const StateGraph& other) const;
    int classical_crossings() const;
};

/// Sum of the signs of classical crossings.
int writhe(const Diagram& d);

/// Kauffman bracket: A-smoothings weigh A, B-smoothings A^-1, each closed
/// loop contributes -A^2-A^-2 and the open strand 1. Virtual crossings are
/// not smoothed. Throws ComputationRefused when there are more than `cap`
/// classical crossings.
LaurentPolynomial bracket(const Diagram& d, int cap = kDefaultBracketCap);
LaurentPolynomial bracket(const StateGraph& g, int cap = kDefaultBracketCap);

/// (-A^3)^(-writhe) * bracket.
LaurentPolynomial jones_normalized(const Diagram& d, int cap = kDefaultBracketCap);

/// Class identity used to bucket spectrum entries. Equal fingerprints mean
/// "not distinguished", never "equivalent".
struct Fingerprint {
    LaurentPolynomial jones;       ///< normalized Jones of the knotoid
    LaurentPolynomial under_jones; ///< normalized Jones of the under closure
    LaurentPolynomial over_jones;  ///< normalized Jones of the over closure
    int height_bound = 0;          ///< upper bound from the diagrams visited
    bool knot_type = false;        ///< height_bound == 0

    /// Bucketing key: the three polynomials.
    std::string key() const;
    bool operator==(const Fingerprint&) const = default;
};

struct FingerprintOptions {
    int cap = kDefaultBracketCap;
    SimplifyOptions simplify;
};

struct FingerprintResult {
    std::optional<Fingerprint> fingerprint; ///< empty: unresolved (above cap after simplification)
    std::string key;                        ///< fingerprint->key(), empty when unresolved
    Diagram simplified;
    int raw_height = 0;
    bool budget_exhausted = false;
    int height_increases = 0;
};

/// Simplify, then evaluate the three polynomials. Knotoid diagrams only.
FingerprintResult fingerprint(const Diagram& d, const FingerprintOptions& options = {});

/// Memo keyed by the raw diagram code. Not thread-safe; use one per worker.
class FingerprintCache {
  public:
    explicit FingerprintCache(FingerprintOptions options = {}) : options_(options) {}
    const FingerprintResult& get(const Diagram& d);
    std::size_t size() const { return memo_.size(); }

  private:
    FingerprintOptions options_;
    std::unordered_map<std::string, FingerprintResult> memo_;
};

} // namespace knotspec
