#include <doctest.h>

#include <symdyn/decompose.hpp>

#include "oracles.hpp"

using namespace symdyn;

namespace {

Language fib() { return Language{make_fibonacci_spec()}; }

} // namespace

TEST_CASE("fibonacci cylinder [0] at level 2 decomposes into the three hand-traced pieces") {
    Language f = fib();
    Decomposition d = decompose_cylinder(f, "0", 2, 1);
    REQUIRE(d.pieces.size() == 3);
    CHECK(d.pieces[0] == ShiftedCylinder{1, "100"});
    CHECK(d.pieces[1] == ShiftedCylinder{1, "101"});
    CHECK(d.pieces[2] == ShiftedCylinder{2, "100"});

    PartitionReport pr = verify_partition(f, d);
    CHECK(pr.covered);
    CHECK(pr.disjoint);
    CHECK(pr.offset_bound);
    CHECK(pr.dense3);

    // the wider window of the worked example verifies too
    pr = verify_partition(f, d, std::make_pair(-6, 3));
    CHECK(pr.covered);
    CHECK(pr.disjoint);
    CHECK(pr.words_checked == f.complexity(10));
}

TEST_CASE("fibonacci cylinder [1] decomposes with bounded offsets") {
    Language f = fib();
    Decomposition d = decompose_cylinder(f, "1", 2, 1);
    for (const auto& p : d.pieces) {
        CHECK((p.q == "100" || p.q == "101"));
        CHECK(p.t <= 9);
    }
    CHECK(verify_partition(f, d).all_ok());
}

TEST_CASE("dropping a piece breaks coverage with a witness") {
    Language f = fib();
    Decomposition d = decompose_cylinder(f, "0", 2, 1);
    d.pieces.erase(d.pieces.end() - 1); // remove sigma^2[100]
    PartitionReport pr = verify_partition(f, d);
    CHECK_FALSE(pr.covered);
    REQUIRE(pr.cover_witness.has_value());
    // the witness fixes ...10 0. with a 0 before the target coordinate
    CHECK(pr.disjoint);
}

TEST_CASE("self-decomposition is trivially a partition") {
    Language f = fib();
    Decomposition d;
    d.target = "00";
    d.level = 3;
    d.growth_k = 1;
    d.pieces = {ShiftedCylinder{0, "00"}};
    PartitionReport pr = verify_partition(f, d);
    CHECK(pr.covered);
    CHECK(pr.disjoint);
}

TEST_CASE("periodic systems are rejected with a clean hypothesis error") {
    Language ab{parse_spec("kind=periodic_seed; generator=ab")};
    CHECK_THROWS_AS(decompose_cylinder(ab, "a", 2, 1), DecomposeError);
    try {
        decompose_cylinder(ab, "a", 2, 1);
    } catch (const DecomposeError& e) {
        CHECK(e.kind == DecomposeError::Kind::no_right_special);
    }
}

TEST_CASE("invalid targets are rejected") {
    Language f = fib();
    CHECK_THROWS_AS(decompose_cylinder(f, "11", 3, 1), std::invalid_argument); // inadmissible
    CHECK_THROWS_AS(decompose_cylinder(f, "00", 2, 1), std::invalid_argument); // |w| >= n
    CHECK_THROWS_AS(decompose_cylinder(f, "", 2, 1), std::invalid_argument);
}

TEST_CASE("every short cylinder at every small good scale verifies exhaustively") {
    Language f = fib();
    for (int n = 2; n <= 7; ++n) {
        for (int l = 1; l < n; ++l) {
            for (const Word& w : f.factors(l)) {
                Decomposition d = decompose_cylinder(f, w, n, 1);
                PartitionReport pr = verify_partition(f, d);
                CHECK(pr.all_ok());
                for (const auto& p : d.pieces) {
                    CHECK(p.t <= 3 * (n + 1));
                    int ell = subshift_min_period(f, p.q);
                    if (ell < n + 1)
                        CHECK(p.t <= ell);
                }
            }
        }
    }
}

TEST_CASE("thue-morse decompositions verify at a k=3 scale") {
    Language t{make_thue_morse_spec()};
    for (const Word& w : t.factors(1)) {
        Decomposition d = decompose_cylinder(t, w, 2, 3);
        CHECK(verify_partition(t, d).all_ok());
    }
}

TEST_CASE("decompositions verify across slopes and at a deep thue-morse scale") {
    for (const char* cf : {"kind=sturmian; cf=2,2,2,2,2,2,2,2,2,2",
                           "kind=sturmian; cf=1,2,3,1,2,3,1,2,3,1,2,3",
                           "kind=sturmian; cf=3,1,3,1,3,1,3,1,3,1"}) {
        Language lang{parse_spec(cf)};
        for (int n = 2; n <= 9; ++n)
            for (int l = 1; l < n; ++l)
                for (const Word& w : lang.factors(l))
                    CHECK(verify_partition(lang,
                                           decompose_cylinder(lang, w, n, 1)).all_ok());
    }

    // increment p(9)-p(8) = 2, so 8 sits in the k=3 scale set
    Language t{make_thue_morse_spec()};
    for (int l = 1; l < 8; ++l)
        for (const Word& w : t.factors(l))
            CHECK(verify_partition(t, decompose_cylinder(t, w, 8, 3)).all_ok());
}

TEST_CASE("decomposition is canonical: repeated runs agree piecewise") {
    Language f = fib();
    Decomposition a = decompose_cylinder(f, "01", 4, 1);
    Decomposition b = decompose_cylinder(f, "01", 4, 1);
    CHECK(a.pieces == b.pieces);
    Language f2 = fib(); // fresh cache, same result
    CHECK(decompose_cylinder(f2, "01", 4, 1).pieces == a.pieces);
}
