#pragma once

#include <symdyn/subshift.hpp>

#include <optional>

namespace symdyn {

// Right-special words at level n and their one-letter right extensions.
// The exact identity #q_prime = #q + p(n+1) - p(n) is asserted on
// construction; a violation means the language enumeration is broken.
struct SpecialWords {
    int level = 0;
    std::vector<Word> q;       // right-special n-words, sorted
    std::vector<Word> q_prime; // all their extensions in L(n+1), sorted
};

struct GoodScales {
    int k = 0;
    std::vector<int> members; // n < bound with p(n+1) < (k+1)(n+1) and p(n+1)-p(n) <= k
};

struct HittingReport {
    int level = 0;            // n
    int k = 0;
    int word_length = 0;      // (k+2)(n+1)
    bool ok = false;
    bool hypothesis_violated = false; // Q_n empty: nothing to hit
    std::optional<Word> counterexample;
    long words_checked = 0;
};

// Finite-scale evidence for the linear-growth bound on the number of ergodic
// measures. Scales below half the horizon make poor liminf evidence, so the
// headline k requires a witness n >= floor(horizon/2); the raw minimum over
// all scales is reported alongside, labeled.
struct BoshernitzanEvidence {
    int horizon = 0;
    int k = 0;                // min k with a tail witness
    int witness = 0;          // smallest tail witness for k
    int k_any_scale = 0;      // min over all n < horizon of ceil(p(n)/n)
    int witness_any_scale = 0;
    std::string statement;    // "at most k ergodic measures (finite-scale evidence)"
};

long complexity(Language& lang, int n);

SpecialWords right_special(Language& lang, int n);

GoodScales good_scales(Language& lang, int k, int bound);

// Exhaustively verifies that every word of length (k+2)(n+1) contains a
// right-special n-word as a factor.
HittingReport check_hitting(Language& lang, int n, int k);

BoshernitzanEvidence boshernitzan_bound(Language& lang, int horizon);

} // namespace symdyn
