#pragma once

#include <symdyn/linalg.hpp>
#include <symdyn/rational.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symdyn {

// A permutation of a finite set with its cycle structure. Cycles are
// canonical: each starts at its smallest element and cycles are sorted by
// those; base points are the smallest elements.
struct PermutationSystem {
    int size = 0;
    std::vector<int> perm; // images, 0-based
    std::vector<std::vector<int>> cycles;
    std::vector<int> cycle_lengths;
    std::vector<int> base_points;
    std::vector<int> cycle_of;      // point -> cycle index
    std::vector<int> phase_of;      // point -> position in its cycle
    int cycle_count() const { return static_cast<int>(cycles.size()); }
};

PermutationSystem cycle_decomposition(const std::vector<int>& perm);

// "(1 2)(3 4 5)" or "2,1,4,5,3"; labels are 1-based unless a 0 appears.
// size_hint extends with trailing fixed points.
std::vector<int> parse_permutation(const std::string& text, std::optional<int> size_hint = {});

struct FiniteMult {
    int k = 0;                 // number of cycles = number of ergodic measures
    int coboundary_image_dim = 0; // exact rank of U_T - Id, = size - k
    int quotient_dim = 0;         // size - image dim, = k
    // period-average matrix of the cycle indicators against the cycle
    // measures; the identity, hence invertible
    std::vector<std::vector<Rational>> witness_matrix;
    bool witness_invertible = false;
    bool constants_plus_coboundaries_span = false; // iff uniquely ergodic (k = 1)
};

FiniteMult finite_mult(const PermutationSystem& sys);

enum class EmbedCase { common_factor, coprime };

// d = k when the cycle lengths share a factor, else k - 1.
std::pair<int, EmbedCase> embedding_dimension(const PermutationSystem& sys);

// Eventually periodic 0/1 coordinate sequence: value at index m is
// pattern[(m + phase) mod period].
struct PeriodicSeq {
    int phase = 0;
    int period = 1;
    std::string pattern = "0";
    int at(long m) const {
        long r = (m + phase) % period;
        if (r < 0)
            r += period;
        return pattern[static_cast<std::size_t>(r)] == '1' ? 1 : 0;
    }
};

struct EmbeddingPlan {
    int dimension = 0;
    EmbedCase tag = EmbedCase::common_factor;
    int special_cycle = -1; // coprime case: the cycle carried by every coordinate
    bool special_dropped = false; // degenerate two-fixed-point case
    std::vector<std::vector<PeriodicSeq>> point_plans; // size x dimension
};

// The equivariant plan at the dimension given by the gcd rule. In the coprime
// case the special cycle must not carry half the total mass of points
// (otherwise the plan has a kernel); the one system where no choice works is
// two fixed points, where dropping the special cycle to the zero sequence is
// injective instead.
EmbeddingPlan build_embedding(const PermutationSystem& sys);

// The coprime-style plan regardless of the gcd hypothesis, special cycle =
// last cycle. Used to exhibit sharpness failures at dimension k - 1.
EmbeddingPlan coprime_style_plan(const PermutationSystem& sys);

struct FiniteMeasure {
    std::vector<Rational> weights; // by point, nonnegative, sums to 1
};

FiniteMeasure uniform_measure(const PermutationSystem& sys);
FiniteMeasure dirac(const PermutationSystem& sys, int point);
FiniteMeasure push_forward(const PermutationSystem& sys, const FiniteMeasure& mu);

// Coordinate rows of Psi(mu) on [lo, hi].
std::vector<std::vector<Rational>> psi_eval(const PermutationSystem& sys,
                                            const EmbeddingPlan& plan, const FiniteMeasure& mu,
                                            long lo, long hi);

struct InjectivityCertificate {
    bool injective = false;
    int period_window = 0; // lcm of the plan periods; one window certifies all
    std::vector<Rational> kernel_witness;           // mass-zero, Psi-kernel; empty if injective
    std::optional<std::pair<FiniteMeasure, FiniteMeasure>> witness_measures;
};

InjectivityCertificate injectivity_certificate(const PermutationSystem& sys,
                                               const EmbeddingPlan& plan);

// dim Fix(T_*^p) = (number of cycles of perm^p) - 1.
int fix_dimension(const PermutationSystem& sys, int p);

} // namespace symdyn
