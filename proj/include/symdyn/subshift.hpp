#pragma once

#include <symdyn/words.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symdyn {

enum class SubshiftKind { substitution, sturmian, sft, periodic_seed };

const char* kind_name(SubshiftKind k);

// Declarative description of a subshift. Parsed from the line-oriented spec
// file format (see parse_spec); the language itself is enumerated lazily by
// Language below.
struct SubshiftSpec {
    Alphabet alphabet{"01"};
    SubshiftKind kind = SubshiftKind::substitution;

    // substitution
    std::map<char, Word> rules;
    char seed = 0;
    bool primitive = false; // checked at parse time, recorded, never a rejection

    // sturmian: continued-fraction coefficients of the slope, all >= 1
    std::vector<int> cf;

    // sft
    std::vector<Word> forbidden;

    // periodic_seed
    Word generator;

    std::string source_text; // raw text the spec was parsed from (digests)
};

struct SpecParseError : std::runtime_error {
    int line;
    SpecParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The cf list ran out before the level-n word count reached n+1.
struct SturmianDepthError : std::runtime_error {
    int level;
    SturmianDepthError(const std::string& msg, int level_)
        : std::runtime_error(msg), level(level_) {}
};

// Fields may be separated by newlines or semicolons; '#' starts a comment.
SubshiftSpec parse_spec(const std::string& text);

SubshiftSpec make_thue_morse_spec();
SubshiftSpec make_fibonacci_spec(int cf_terms = 24);

bool substitution_is_primitive(const Alphabet& alphabet, const std::map<char, Word>& rules);

struct Limits {
    std::size_t max_words = 2'000'000;        // cap on the size of one language level
    std::size_t max_text_length = 1u << 24;   // cap on generated reference words
    int max_substitution_iterations = 64;
};

// Level-indexed language cache of a subshift. factors(n) is exactly L_n(X),
// sorted in alphabet order; results are deterministic, so independent callers
// may hold independent caches.
class Language {
public:
    explicit Language(SubshiftSpec spec, Limits limits = {});

    const SubshiftSpec& spec() const { return spec_; }
    const Alphabet& alphabet() const { return spec_.alphabet; }
    const Limits& limits() const { return limits_; }

    const std::vector<Word>& factors(int n);
    bool contains(int n, const Word& w);
    long complexity(int n) { return static_cast<long>(factors(n).size()); }
    int horizon() const { return horizon_; }

    // A long admissible one-sided word, used for empirical frequency
    // estimates. Deterministic per spec.
    const Word& reference_prefix(std::size_t min_length);

    // Test hook: substitution factor sets must be stable under further
    // iterations of the substitution once the fixed-point expansion has
    // converged at level n.
    std::vector<Word> substitution_factors_with_extra_iterations(int n, int extra);

private:
    std::vector<Word> enumerate(int n);
    std::vector<Word> substitution_level(int n, int extra_iterations);
    std::vector<Word> sturmian_level(int n);
    std::vector<Word> sft_level(int n);
    std::vector<Word> periodic_level(int n) const;
    void ensure_sft_graph();
    void grow_substitution_text(std::size_t min_length);
    const Word& sturmian_word();

    SubshiftSpec spec_;
    Limits limits_;
    std::map<int, std::vector<Word>> levels_;
    int horizon_ = 0;

    Word subst_text_;      // zeta^k(seed), grown on demand
    Word sturmian_text_;   // full standard word from the cf list
    Word reference_;

    // sft transfer graph on admissible (m-1)-words
    struct SftGraph {
        int m = 0;
        std::vector<Word> vertices; // sorted
        std::vector<std::vector<int>> next; // successor vertex ids
        std::vector<char> viable;   // on some bi-infinite path
    };
    std::optional<SftGraph> sft_;
    std::vector<char> sft_right_ok_;
    std::vector<char> sft_left_ok_;
};

struct AperiodicityReport {
    bool aperiodic = true;
    Word witness; // nonempty iff aperiodic == false
    int max_period = 0;
    int window = 0;
};

// True iff no v-periodic word of length N is admissible, over all v in L(p),
// p <= P. Requires N >= 2P.
AperiodicityReport is_aperiodic_up_to(Language& lang, int max_period, int window);

// FNV-1a, used to tag reports with the spec they were computed from.
std::uint64_t text_digest(const std::string& text);

} // namespace symdyn
