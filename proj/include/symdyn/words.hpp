#pragma once

#include <symdyn/rational.hpp>

#include <array>
#include <stdexcept>
#include <string>

namespace symdyn {

// A finite word over a small printable alphabet. Words are plain strings;
// ordering questions always go through an Alphabet so that declared symbol
// order (not ASCII) drives every sorted output.
using Word = std::string;

class Alphabet {
public:
    explicit Alphabet(std::string symbols);

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& symbols() const { return symbols_; }
    char symbol(int rank) const { return symbols_.at(static_cast<std::size_t>(rank)); }

    bool contains(char c) const { return rank_[static_cast<unsigned char>(c)] >= 0; }
    int rank(char c) const;

    // Lexicographic order induced by the declared symbol order.
    bool word_less(const Word& a, const Word& b) const;

    void require_word(const Word& w) const;

private:
    std::string symbols_;
    std::array<int, 256> rank_{};
};

// Minimal-period data of a word w:
//   ell    = min{1 <= l < |w| : w self-overlaps at shift l}, with min(empty) = |w|
//   v      = prefix of length ell, so w = v^K v_hat with v_hat a proper prefix of v
//   K      = floor(|w|/ell)
//   L      = 1 + number of self-overlap shifts in [1, |w|)
// K >= 1 always; K >= L does NOT hold in general (e.g. "101" has K=1, L=2).
struct PeriodData {
    int ell = 0;
    Word v;
    int K = 0;
    Word v_hat;
    int L = 1;
};

// N(u|v): occurrences of u in v, overlapping occurrences counted.
long occurrences(const Word& u, const Word& v);

PeriodData minimal_period(const Word& w);

// nu_w([u]): mass the periodization of w gives the cylinder [u], i.e. the
// number of cyclic positions of w where u can be read, over |w|. Computed by
// extending w cyclically by |u|-1 letters.
Rational periodization_measure(const Word& w, const Word& u);

} // namespace symdyn
