#pragma once

// Brute-force reference implementations, independent of the library paths
// they check. Everything here favors obviousness over speed.

#include <symdyn/rational.hpp>
#include <symdyn/words.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using symdyn::Rational;
using symdyn::Word;

// Thue-Morse prefix by direct substitution expansion.
inline Word tm_prefix(std::size_t len) {
    Word w = "0";
    while (w.size() < len) {
        Word next;
        for (char c : w)
            next += (c == '0') ? "01" : "10";
        w = next;
    }
    return w.substr(0, len);
}

// Fibonacci word by the 0->01, 1->0 substitution; an independent route to
// the cf = (1,1,1,...) standard word.
inline Word fib_prefix(std::size_t len) {
    Word w = "0";
    while (w.size() < len) {
        Word next;
        for (char c : w)
            next += (c == '0') ? "01" : "0";
        w = next;
    }
    return w.substr(0, len);
}

inline std::set<Word> factor_set(const Word& text, std::size_t n) {
    std::set<Word> out;
    if (text.size() < n)
        return out;
    for (std::size_t i = 0; i + n <= text.size(); ++i)
        out.insert(text.substr(i, n));
    return out;
}

inline long count_occurrences(const Word& u, const Word& v) {
    long c = 0;
    for (std::size_t i = 0; i + u.size() <= v.size(); ++i)
        if (v.substr(i, u.size()) == u)
            ++c;
    return c;
}

// smallest shift in [1, |w|) under which w agrees with itself, |w| if none
inline int naive_min_period(const Word& w) {
    for (std::size_t l = 1; l < w.size(); ++l) {
        bool ok = true;
        for (std::size_t i = 0; i + l < w.size(); ++i)
            if (w[i] != w[i + l]) {
                ok = false;
                break;
            }
        if (ok)
            return static_cast<int>(l);
    }
    return static_cast<int>(w.size());
}

// plain rational forward elimination, no fraction-free tricks
inline std::size_t plain_rank(std::vector<std::vector<Rational>> m) {
    if (m.empty())
        return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (m[r][c] != Rational(0)) {
                pivot = r;
                break;
            }
        if (pivot == rows)
            continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == Rational(0))
                continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t j = c; j < cols; ++j)
                m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

inline Word random_word(const std::string& letters, std::size_t len) {
    std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
    Word w;
    for (std::size_t i = 0; i < len; ++i)
        w += letters[pick(rng())];
    return w;
}

} // namespace oracle
