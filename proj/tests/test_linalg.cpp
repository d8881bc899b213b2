#include <doctest.h>

#include <symdyn/linalg.hpp>

#include "oracles.hpp"

using namespace symdyn;

namespace {

QMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    QMatrix m;
    for (const auto& r : rows)
        m.append_row(r);
    return m;
}

std::vector<std::vector<Rational>> random_matrix(std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
    for (auto& r : m)
        for (auto& x : r)
            x = rat(num(oracle::rng()), den(oracle::rng()));
    return m;
}

} // namespace

TEST_CASE("bareiss rank on the sturmian level-2 matrix") {
    auto rows = std::vector<std::vector<Rational>>{
        {rat(1), rat(1), rat(1)}, {rat(1), rat(1), rat(-1)}, {rat(1), rat(-1), rat(1)}};
    CHECK(bareiss_rank(from_rows(rows)) == 3);
    // its determinant is -4: dependent row sets drop the rank
    rows.push_back({rat(3), rat(1), rat(1)}); // sum of the three
    CHECK(bareiss_rank(from_rows(rows)) == 3);
}

TEST_CASE("bareiss rank agrees with plain rational elimination") {
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t r = 1 + oracle::rng()() % 7, c = 1 + oracle::rng()() % 7;
        auto rows = random_matrix(r, c);
        if (trial % 3 == 0 && r >= 2)
            rows[r - 1] = rows[0]; // force dependence often
        CHECK(bareiss_rank(from_rows(rows)) == oracle::plain_rank(rows));
    }
}

TEST_CASE("kernel vectors annihilate the matrix and count the nullity") {
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + oracle::rng()() % 6, c = 1 + oracle::rng()() % 6;
        auto rows = random_matrix(r, c);
        QMatrix m = from_rows(rows);
        auto basis = kernel_basis(m);
        CHECK(basis.size() == c - bareiss_rank(m));
        for (const auto& v : basis)
            for (std::size_t i = 0; i < r; ++i) {
                Rational dot(0);
                for (std::size_t j = 0; j < c; ++j)
                    dot += rows[i][j] * v[j];
                CHECK(dot == Rational(0));
            }
    }
}

TEST_CASE("row combinations are found exactly or separated exactly") {
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + oracle::rng()() % 5, c = 1 + oracle::rng()() % 5;
        auto rows = random_matrix(r, c);
        QMatrix m = from_rows(rows);

        // in-span target: a known combination
        std::vector<Rational> target(c, Rational(0));
        std::vector<Rational> chosen(r);
        std::uniform_int_distribution<int> pick(-3, 3);
        for (std::size_t i = 0; i < r; ++i) {
            chosen[i] = rat(pick(oracle::rng()));
            for (std::size_t j = 0; j < c; ++j)
                target[j] += chosen[i] * rows[i][j];
        }
        CombinationResult res = express_in_rows(m, target);
        REQUIRE(res.consistent);
        std::vector<Rational> rebuilt(c, Rational(0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                rebuilt[j] += res.coefficients[i] * rows[i][j];
        CHECK(rebuilt == target);

        // out-of-span target (when the rows do not already fill the space)
        if (bareiss_rank(m) < c) {
            auto kb = kernel_basis(m);
            REQUIRE_FALSE(kb.empty());
            // kernel vectors are orthogonal to every row, so one of them is
            // outside the row space unless it is orthogonal to itself
            std::vector<Rational> out = kb.front();
            CombinationResult miss = express_in_rows(m, out);
            if (!miss.consistent) {
                Rational dot(0);
                for (std::size_t j = 0; j < c; ++j)
                    dot += out[j] * miss.separating[j];
                CHECK(dot == Rational(1));
                for (std::size_t i = 0; i < r; ++i) {
                    Rational rd(0);
                    for (std::size_t j = 0; j < c; ++j)
                        rd += rows[i][j] * miss.separating[j];
                    CHECK(rd == Rational(0));
                }
            }
        }
    }
}

TEST_CASE("rank is invariant under row and column permutations") {
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 2 + oracle::rng()() % 5, c = 2 + oracle::rng()() % 5;
        auto rows = random_matrix(r, c);
        std::size_t base = bareiss_rank(from_rows(rows));
        std::shuffle(rows.begin(), rows.end(), oracle::rng());
        std::vector<std::size_t> perm(c);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), oracle::rng());
        for (auto& row : rows) {
            std::vector<Rational> shuffled(c);
            for (std::size_t j = 0; j < c; ++j)
                shuffled[j] = row[perm[j]];
            row = std::move(shuffled);
        }
        CHECK(bareiss_rank(from_rows(rows)) == base);
    }
}
