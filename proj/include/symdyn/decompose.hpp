#pragma once

#include <symdyn/complexity.hpp>

#include <optional>

namespace symdyn {

// sigma^t [q]: the set of points carrying q at coordinates -t .. -t+|q|-1.
struct ShiftedCylinder {
    int t = 0;
    Word q;

    friend bool operator==(const ShiftedCylinder&, const ShiftedCylinder&) = default;
};

// [w] written as a disjoint union of shifted cylinders on (n+1)-words that
// extend a right-special n-word. Pieces are canonical: sorted by (t, q), and
// independent of enumeration order.
struct Decomposition {
    Word target;
    int level = 0;   // n
    int growth_k = 0;
    std::vector<ShiftedCylinder> pieces;
};

struct DecomposeError : std::runtime_error {
    enum class Kind { no_right_special, no_hit_within_horizon };
    Kind kind;
    DecomposeError(Kind kind_, const std::string& msg) : std::runtime_error(msg), kind(kind_) {}
};

struct PartitionReport {
    bool covered = false;       // union of the pieces equals [target] on the window
    bool disjoint = false;      // no window word satisfies two pieces
    bool offset_bound = false;  // every t <= (k+2)(n+1)
    bool dense3 = false;        // pieces with a short-period word satisfy t <= |v(q)|
    int window_lo = 0, window_hi = 0;
    long words_checked = 0;
    std::optional<Word> cover_witness;    // window word violating covered
    std::optional<Word> disjoint_witness; // window word hit by two pieces

    bool all_ok() const { return covered && disjoint && offset_bound && dense3; }
};

// Cylinder decomposition over right-special extensions: enumerate admissible
// contexts long enough to guarantee a right-special hit, locate the last
// right-special n-block ending before position n-1, and emit the shifted
// cylinder of its (n+1)-extension. Requires |w| < n and w admissible.
Decomposition decompose_cylinder(Language& lang, const Word& w, int n, int k);

// Exhaustive finite-window verification: a window word satisfies the target
// constraint iff exactly one piece constraint holds. This is the source of
// truth for the indexing convention.
PartitionReport verify_partition(Language& lang, const Decomposition& d,
                                 std::optional<std::pair<int, int>> window = std::nullopt);

// Minimal period of q inside the subshift: the smallest shift whose merged
// overlap word is itself admissible ([q] and sigma^ell[q] meet in X), |q| if
// none. At least the combinatorial minimal period; the offset-by-period bound
// on decomposition pieces holds for this one.
int subshift_min_period(Language& lang, const Word& q);

} // namespace symdyn
