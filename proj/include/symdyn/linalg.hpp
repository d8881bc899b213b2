#pragma once

#include <symdyn/rational.hpp>

#include <stdexcept>
#include <vector>

namespace symdyn {

// Dense matrix of exact rationals, row major. Small by construction: columns
// are indexed by admissible window words and the windows stay modest.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    void append_row(const std::vector<Rational>& row);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// Rank by Bareiss fraction-free elimination: rows are scaled to integers by
// their denominator lcm, then every intermediate entry is a minor of the
// scaled matrix and every division is exact.
std::size_t bareiss_rank(const QMatrix& m);

// Basis of the right kernel { x : m x = 0 }, via rational Gauss-Jordan.
std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m);

struct CombinationResult {
    bool consistent = false;
    std::vector<Rational> coefficients;   // c with sum_i c_i row_i = target
    std::vector<Rational> separating;     // y with rows . y = 0, target . y = 1
};

// Express target as a linear combination of the rows of m, or produce an
// exact separating functional if impossible.
CombinationResult express_in_rows(const QMatrix& m, const std::vector<Rational>& target);

} // namespace symdyn
