#pragma once

#include <symdyn/decompose.hpp>
#include <symdyn/linalg.hpp>

#include <optional>

namespace symdyn {

struct Window {
    int lo = 0;
    int hi = 0;
    int length() const { return hi - lo + 1; }
    bool contains(const Window& other) const { return lo <= other.lo && other.hi <= hi; }
};

// A finite-window function on the subshift: exact rational values, one per
// admissible word of the window length, aligned with the sorted language
// level. Total on the language by construction.
struct CylinderFunction {
    Window window;
    std::vector<Rational> values;
};

CylinderFunction indicator(Language& lang, const Word& q, int t = 0);
CylinderFunction constant_fn(Language& lang, const Rational& c);
// x -> (-1)^{rank of x_0}; the cyclic vector used for Sturmian certificates.
CylinderFunction letter_parity(Language& lang);

CylinderFunction refine(Language& lang, const CylinderFunction& f, Window target);
CylinderFunction shift_fn(const CylinderFunction& f, int j); // f o sigma^j
bool equal_as_functions(Language& lang, const CylinderFunction& f, const CylinderFunction& g);

struct SpanCertificate {
    Window window;
    int shift_lo = 0, shift_hi = 0;
    std::size_t family_size = 0;
    std::size_t rank = 0;
    std::size_t ambient = 0; // p(window length)
};

SpanCertificate span_rank(Language& lang, const std::vector<CylinderFunction>& family,
                          int shift_lo, int shift_hi, Window window,
                          std::size_t max_ambient = 4096);

struct SpanMembership {
    bool member = false;
    Window window;
    struct Coefficient {
        std::size_t family_index;
        int shift;
        Rational value;
    };
    std::vector<Coefficient> coefficients; // nonzero entries only
    // On failure: an exact finitely supported signed measure on window words
    // annihilating every shifted family member but giving the target mass 1.
    std::vector<std::pair<Word, Rational>> separating;
};

SpanMembership span_contains(Language& lang, const std::vector<CylinderFunction>& family,
                             int shift_lo, int shift_hi, const CylinderFunction& target,
                             Window window, std::size_t max_ambient = 4096);

struct SturmianCertificate {
    int n_max = 0;
    struct Level {
        int n;
        std::size_t rank;
        std::size_t expected; // p(n) = n+1
    };
    std::vector<Level> levels;
    bool ok = false;
    int failing_level = 0; // meaningful iff !ok
};

// rank{1, f o sigma^k : k < n} = n+1 on the level-n window, for each n.
SturmianCertificate sturmian_simplicity_certificate(Language& lang, int n_max,
                                                    std::size_t max_ambient = 4096);

struct BirkhoffResult {
    CylinderFunction average; // (1/count) sum f o sigma^{k step}
    Rational deviation;       // max - min over all admissible window words
    std::optional<Rational> restricted_deviation; // over the supplied words
};

BirkhoffResult birkhoff_average(Language& lang, const CylinderFunction& f, int step, int count,
                                Window window,
                                const std::vector<Word>* restrict_to = nullptr);

struct TmEvidence {
    int n = 0;
    int p_max = 0;
    Word block; // the n-fold substitution image of the first letter
    struct Row {
        int p;
        Rational deviation; // max - min of the block-aligned Birkhoff average
    };
    std::vector<Row> rows;
    bool dyadic_nonincreasing = false; // deviations at p = 4, 8, 16, ... do not increase
};

// Finite-scale evidence that averaging the first block indicator along
// block-aligned shifts flattens out, i.e. the one-function family already
// spans what the two block indicators span.
TmEvidence thue_morse_cyclicity_evidence(Language& lang, int n, int p_max);

struct MultiplicityBound {
    int n = 0;
    int k = 0;
    std::vector<Word> witness_family; // the right-special extensions
    std::size_t bound = 0;            // #witness_family
    bool bound_ok = false;            // bound <= 2k
    struct Target {
        Word w;
        std::vector<ShiftedCylinder> pieces; // coefficient 1 each
        bool verified;
    };
    std::vector<Target> targets; // every w with |w| < n
    bool ok = false;
    std::string verdict;
};

// The finite-scale instantiation of the 2k multiplicity bound: the witness
// family has size <= 2k and every short cylinder indicator is an exact sum of
// shifted witness indicators, verified exhaustively.
MultiplicityBound multiplicity_upper_bound(Language& lang, int k, int n);

struct KeylemRow {
    int n = 0;
    bool has_word = false;
    Word w;             // chosen right-special word (lexicographically least)
    int ell = 0;        // minimal period of w
    Rational mu_hat;    // empirical frequency of w in a long admissible prefix
    Rational product;   // ell * mu_hat
    std::vector<std::pair<char, Rational>> periodization_letter_freqs; // nu_{v(w)}
    std::vector<std::pair<char, Rational>> prefix_letter_freqs;        // empirical
};

struct KeylemTable {
    std::vector<KeylemRow> rows;
    bool ell_strictly_increasing = false;
    std::vector<std::string> notes;
};

// Numeric decay table: minimal periods of the chosen level-n words and the
// products ell * empirical mass. Evidence, never proof.
KeylemTable keylem_decay(Language& lang, const std::vector<int>& levels,
                         std::size_t prefix_length = 4096);

} // namespace symdyn
