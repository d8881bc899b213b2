#include <doctest.h>

#include <symdyn/embed.hpp>

#include "oracles.hpp"

#include <functional>
#include <numeric>

using namespace symdyn;

namespace {

PermutationSystem sys_from(const std::string& text) {
    return cycle_decomposition(parse_permutation(text));
}

// all permutations of {0..n-1}
std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> base(static_cast<std::size_t>(n));
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

FiniteMeasure random_measure(const PermutationSystem& sys) {
    std::uniform_int_distribution<int> pick(0, 9);
    std::vector<long> raw(static_cast<std::size_t>(sys.size));
    long total = 0;
    for (auto& x : raw) {
        x = pick(oracle::rng()) + 1;
        total += x;
    }
    FiniteMeasure mu;
    for (long x : raw)
        mu.weights.push_back(Rational(BigInt(x), BigInt(total)));
    return mu;
}

} // namespace

TEST_CASE("permutation parsing in both notations") {
    CHECK(parse_permutation("(1 2)(3 4 5)") == std::vector<int>{1, 0, 3, 4, 2});
    CHECK(parse_permutation("2,1,4,5,3") == std::vector<int>{1, 0, 3, 4, 2});
    CHECK(parse_permutation("(0 1)") == std::vector<int>{1, 0});
    CHECK(parse_permutation("(1 2)", 4) == std::vector<int>{1, 0, 2, 3});
    CHECK_THROWS_AS(parse_permutation("1,1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_permutation("(1 2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_permutation(""), std::invalid_argument);
}

TEST_CASE("cycle decomposition canonical form") {
    PermutationSystem sys = sys_from("(1 2)(3 4 5)");
    CHECK(sys.cycle_count() == 2);
    CHECK(sys.cycle_lengths == std::vector<int>{2, 3});
    CHECK(sys.base_points == std::vector<int>{0, 2});

    PermutationSystem id4 = sys_from("1,2,3,4");
    CHECK(id4.cycle_count() == 4);
    CHECK(id4.cycle_lengths == std::vector<int>(4, 1));

    CHECK(sys_from("(1 2)(3 4 5 6)").cycle_lengths == std::vector<int>{2, 4});
    CHECK_THROWS_AS(cycle_decomposition({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("finite multiplicity equals the cycle count via coboundary rank") {
    FiniteMult fm = finite_mult(sys_from("1,2,3"));
    CHECK(fm.k == 3);
    CHECK(fm.coboundary_image_dim == 0);
    CHECK(fm.quotient_dim == 3);

    fm = finite_mult(sys_from("(1 2)(3 4 5)"));
    CHECK(fm.k == 2);
    CHECK(fm.coboundary_image_dim == 3);
    CHECK(fm.quotient_dim == 2);
    CHECK(fm.witness_invertible);
    CHECK_FALSE(fm.constants_plus_coboundaries_span);

    fm = finite_mult(sys_from("(1 2 3 4)"));
    CHECK(fm.quotient_dim == 1);
    CHECK(fm.coboundary_image_dim == 3);
    CHECK(fm.constants_plus_coboundaries_span); // uniquely ergodic decomposition
}

TEST_CASE("embedding dimension follows the gcd rule") {
    CHECK(embedding_dimension(sys_from("(1 2)(3 4 5 6)")) ==
          std::make_pair(2, EmbedCase::common_factor));
    CHECK(embedding_dimension(sys_from("(1 2)(3 4 5)")) ==
          std::make_pair(1, EmbedCase::coprime));
    CHECK(embedding_dimension(sys_from("1,2")) == std::make_pair(1, EmbedCase::coprime));
    CHECK(embedding_dimension(sys_from("(1 2)")) ==
          std::make_pair(1, EmbedCase::common_factor)); // single 2-cycle, gcd 2
    CHECK(embedding_dimension(sys_from("1")) == std::make_pair(0, EmbedCase::coprime));
}

TEST_CASE("plans on the worked examples") {
    // single 2-cycle: (10) against (01)
    PermutationSystem two = sys_from("(1 2)");
    EmbeddingPlan plan = build_embedding(two);
    CHECK(plan.dimension == 1);
    CHECK(plan.point_plans[0][0].at(0) == 1);
    CHECK(plan.point_plans[0][0].at(1) == 0);
    CHECK(plan.point_plans[1][0].at(0) == 0);
    CHECK(plan.point_plans[1][0].at(1) == 1);

    // (2,3): the single coordinate carries period 2 on one cycle, period 3
    // on the other
    PermutationSystem mixed = sys_from("(1 2)(3 4 5)");
    plan = build_embedding(mixed);
    CHECK(plan.dimension == 1);
    CHECK(plan.tag == EmbedCase::coprime);
    int special_base = mixed.base_points[static_cast<std::size_t>(plan.special_cycle)];
    CHECK(plan.point_plans[static_cast<std::size_t>(special_base)][0].period ==
          mixed.cycle_lengths[static_cast<std::size_t>(plan.special_cycle)]);

    // single fixed point: zero-dimensional plan, trivially injective
    PermutationSystem one = sys_from("1");
    plan = build_embedding(one);
    CHECK(plan.dimension == 0);
    CHECK(injectivity_certificate(one, plan).injective);
}

TEST_CASE("psi evaluation: extreme points, cycle averages, equivariance") {
    PermutationSystem sys = sys_from("(1 2)(3 4 5)");
    EmbeddingPlan plan = build_embedding(sys);

    // delta at a point reproduces that point's plan row
    for (int x = 0; x < sys.size; ++x) {
        auto rows = psi_eval(sys, plan, dirac(sys, x), 0, 5);
        for (int i = 0; i < plan.dimension; ++i)
            for (long m = 0; m <= 5; ++m)
                CHECK(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] ==
                      Rational(plan.point_plans[static_cast<std::size_t>(x)]
                                               [static_cast<std::size_t>(i)].at(m)));
    }

    // uniform measure on one cycle is constant 1/r in that coordinate
    PermutationSystem pair = sys_from("(1 2)(3 4 5 6)");
    EmbeddingPlan pair_plan = build_embedding(pair);
    FiniteMeasure mu;
    mu.weights.assign(6, Rational(0));
    for (int x : pair.cycles[1])
        mu.weights[static_cast<std::size_t>(x)] = rat(1, 4);
    auto rows = psi_eval(pair, pair_plan, mu, -4, 4);
    for (long m = -4; m <= 4; ++m) {
        CHECK(rows[1][static_cast<std::size_t>(m + 4)] == rat(1, 4));
        CHECK(rows[0][static_cast<std::size_t>(m + 4)] == Rational(0));
    }

    // half and half on a 2-cycle averages to one half
    PermutationSystem two = sys_from("(1 2)");
    EmbeddingPlan tp = build_embedding(two);
    FiniteMeasure half;
    half.weights = {rat(1, 2), rat(1, 2)};
    auto hr = psi_eval(two, tp, half, 0, 3);
    for (const auto& v : hr[0])
        CHECK(v == rat(1, 2));

    // pushing the measure forward shifts the image by one
    for (int trial = 0; trial < 20; ++trial) {
        FiniteMeasure random = random_measure(sys);
        auto before = psi_eval(sys, plan, random, 1, 7);
        auto after = psi_eval(sys, plan, push_forward(sys, random), 0, 6);
        CHECK(before == after);
    }
}

TEST_CASE("injectivity certificates on the worked systems") {
    CHECK(injectivity_certificate(sys_from("(1 2)(3 4 5)"),
                                  build_embedding(sys_from("(1 2)(3 4 5)"))).injective);
    CHECK(injectivity_certificate(sys_from("(1 2)(3 4 5 6)"),
                                  build_embedding(sys_from("(1 2)(3 4 5 6)"))).injective);

    // two fixed points: the degenerate coprime case passes via the drop plan
    PermutationSystem ff = sys_from("1,2");
    EmbeddingPlan ffp = build_embedding(ff);
    CHECK(ffp.dimension == 1);
    CHECK(ffp.special_dropped);
    CHECK(injectivity_certificate(ff, ffp).injective);

    // (2,4) forced into the k-1 dimensional coprime-style plan fails, and
    // the witness is a genuine collision
    PermutationSystem cf = sys_from("(1 2)(3 4 5 6)");
    EmbeddingPlan forced = coprime_style_plan(cf);
    CHECK(forced.dimension == 1);
    InjectivityCertificate cert = injectivity_certificate(cf, forced);
    REQUIRE_FALSE(cert.injective);
    REQUIRE(cert.witness_measures.has_value());
    const auto& [mu1, mu2] = *cert.witness_measures;
    CHECK(mu1.weights != mu2.weights);
    Rational m1(0), m2(0);
    for (const auto& v : mu1.weights) {
        CHECK(v >= Rational(0));
        m1 += v;
    }
    for (const auto& v : mu2.weights)
        m2 += v;
    CHECK(m1 == Rational(1));
    CHECK(m2 == Rational(1));
    long period = 12;
    CHECK(psi_eval(cf, forced, mu1, 0, period) == psi_eval(cf, forced, mu2, 0, period));

    // sharpness consistency: dim Fix(T_*^2) = 3 exceeds the 1-dimensional
    // shift's 2-dimensional periodic simplex
    CHECK(fix_dimension(cf, 2) == 3);
}

TEST_CASE("fixed-simplex dimensions") {
    PermutationSystem cf = sys_from("(1 2)(3 4 5 6)");
    CHECK(fix_dimension(cf, 1) == 1); // k - 1
    CHECK(fix_dimension(cf, 2) == 3); // kp - 1

    PermutationSystem four = sys_from("(1 2 3 4)");
    CHECK(fix_dimension(four, 4) == 3);
    CHECK(fix_dimension(four, 1) == 0);

    for (int p : {1, 2, 3}) {
        PermutationSystem sys = sys_from("(1 2 3)(4 5 6)");
        if (3 % p == 0)
            CHECK(fix_dimension(sys, p) == 2 * p - 1);
    }
}

TEST_CASE("exhaustive small sweeps: multiplicity and embedding certificates") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& perm : all_perms(n)) {
            PermutationSystem sys = cycle_decomposition(perm);
            FiniteMult fm = finite_mult(sys);
            CHECK(fm.quotient_dim == sys.cycle_count());
            CHECK(fm.coboundary_image_dim == sys.size - sys.cycle_count());

            EmbeddingPlan plan = build_embedding(sys);
            auto [d, tag] = embedding_dimension(sys);
            CHECK(plan.dimension == d);
            CHECK(plan.tag == tag);
            CHECK(injectivity_certificate(sys, plan).injective);
        }
    }
}

TEST_CASE("fix dimension matches kp-1 whenever p divides every cycle length") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& perm : all_perms(n)) {
            PermutationSystem sys = cycle_decomposition(perm);
            for (int p = 1; p <= n; ++p) {
                bool divides_all = true;
                for (int r : sys.cycle_lengths)
                    if (r % p != 0)
                        divides_all = false;
                if (divides_all)
                    CHECK(fix_dimension(sys, p) == sys.cycle_count() * p - 1);
            }
        }
    }
}

TEST_CASE("fix dimension invariant over every cycle type up to size 10") {
    // fix_dimension only depends on the cycle type, so one permutation per
    // partition covers all systems of that size
    std::function<void(int, int, std::vector<int>&)> partitions =
        [&](int remaining, int max_part, std::vector<int>& parts) {
            if (remaining == 0) {
                std::vector<int> perm;
                for (int r : parts) {
                    int base = static_cast<int>(perm.size());
                    for (int i = 0; i < r; ++i)
                        perm.push_back(base + (i + 1) % r);
                }
                PermutationSystem sys = cycle_decomposition(perm);
                for (int p = 1; p <= sys.size; ++p) {
                    bool divides_all = true;
                    for (int r : sys.cycle_lengths)
                        if (r % p != 0)
                            divides_all = false;
                    if (divides_all)
                        CHECK(fix_dimension(sys, p) == sys.cycle_count() * p - 1);
                }
                return;
            }
            for (int part = std::min(remaining, max_part); part >= 1; --part) {
                parts.push_back(part);
                partitions(remaining - part, part, parts);
                parts.pop_back();
            }
        };
    for (int n = 1; n <= 10; ++n) {
        std::vector<int> parts;
        partitions(n, n, parts);
    }
}
