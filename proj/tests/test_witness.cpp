#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <diophant/witness.hpp>

using namespace diophant;

namespace {

CantorSeq make_seq(std::function<BigInt(unsigned long)> g, bool unbounded) {
    return {std::move(g), [](unsigned long) { return 1; }, unbounded, "test"};
}

}  // namespace

TEST_CASE("witness pairs beat any rational threshold", "[witness]") {
    std::vector<RealOracle> xs = {RealOracle::sqrt_of(BigInt(2)), RealOracle::e(),
                                  RealOracle::zeta2()};
    for (const auto& alpha : xs)
        for (long d : {10L, 10000L, 1000000L}) {
            ExactRational eps(1, d);
            IrrationalityWitness w = find_witness(alpha, eps);
            REQUIRE(w.x >= 1);
            REQUIRE(w.eps == eps);
            DyadicInterval gap = abs_of(w.certified_value);
            REQUIRE(gap.lo > 0);
            REQUIRE(gap.hi < eps);
            // independent recomputation of x*alpha - y
            DyadicInterval fine = shift(scale(alpha.enclosure(512), ExactRational(w.x)),
                                        ExactRational(BigInt(-w.y)));
            REQUIRE(overlaps(fine, w.certified_value));
        }
    REQUIRE_THROWS_AS(find_witness(RealOracle::e(), ExactRational(0)), InvalidArgument);
    REQUIRE_THROWS_AS(find_witness(RealOracle::e(), ExactRational(-1, 2)), InvalidArgument);
    REQUIRE_THROWS_AS(find_witness(RealOracle::rational(ExactRational(3, 7)),
                                   ExactRational(1, 10)),
                      IrrationalRequired);
}

TEST_CASE("rational targets never admit such pairs", "[witness]") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> ad(-100, 100), bd(1, 60);
    for (int trial = 0; trial < 60; ++trial) {
        BigInt a(ad(rng)), b(bd(rng));
        ObstructionReport rep = rational_obstruction(a, b, BigInt(500));
        REQUIRE(rep.violations.empty());
        REQUIRE(rep.pairs_checked == 1001);
        REQUIRE(rep.threshold == make_rational(1, b));
        REQUIRE(rep.x_limit == 500);
    }
    REQUIRE_THROWS_AS(rational_obstruction(BigInt(1), BigInt(0), BigInt(5)),
                      InvalidArgument);
    REQUIRE_THROWS_AS(rational_obstruction(BigInt(1), BigInt(3), BigInt(-1)),
                      InvalidArgument);
}

TEST_CASE("factorial partial sums with telescoped tail bound", "[witness]") {
    CantorSeq fact = make_seq([](unsigned long n) { return BigInt(n); }, true);
    // cumulative products 1, 2, 6, 24, ... and digit sums against them
    BigInt G = 1, P = 0;
    for (unsigned long N = 1; N <= 25; ++N) {
        G *= N;
        P = P * N + 1;
        CantorPartials r = cantor_partials(fact, N);
        REQUIRE(r.g == G);
        REQUIRE(r.p == P);
        REQUIRE(r.bound == make_rational(1, N));  // 1/(g_{N+1} - 1) = 1/N
        REQUIRE(r.certified_gap.lo > 0);
        REQUIRE(r.certified_gap.hi <= r.bound);
    }
    CantorPartials three = cantor_partials(fact, 3);
    REQUIRE(three.p == 10);
    REQUIRE(three.g == 6);
    REQUIRE(three.bound == ExactRational(1, 3));
}

TEST_CASE("constant base hits the bound exactly", "[witness]") {
    CantorSeq halves = make_seq([](unsigned long) { return BigInt(2); }, false);
    // the tail of sum 1/2^n equals the bound itself, so the gap endpoint is sharp
    CantorPartials r = cantor_partials(halves, 1);
    REQUIRE(r.p == 1);
    REQUIRE(r.g == 2);
    REQUIRE(r.bound == 1);
    REQUIRE(r.certified_gap.hi <= 1);
    REQUIRE(r.certified_gap.lo > 0);
    for (unsigned long N = 2; N <= 12; ++N) {
        CantorPartials rn = cantor_partials(halves, N);
        REQUIRE(rn.bound == 1);
        REQUIRE(rn.certified_gap.lo > 0);
        REQUIRE(rn.certified_gap.hi <= 1);
    }
}

TEST_CASE("geometric base has shrinking bounds", "[witness]") {
    CantorSeq geo = make_seq([](unsigned long n) { return pow_int(BigInt(3), n); }, true);
    for (unsigned long N = 1; N <= 6; ++N) {
        CantorPartials r = cantor_partials(geo, N);
        REQUIRE(r.bound == make_rational(1, BigInt(pow_int(BigInt(3), N + 1) - 1)));
        REQUIRE(r.certified_gap.lo > 0);
        REQUIRE(r.certified_gap.hi <= r.bound);
    }
}

TEST_CASE("bound degenerates only when the next base is one", "[witness]") {
    CantorSeq fact = make_seq([](unsigned long n) { return BigInt(n); }, true);
    // N = 0 asks for 1/(g_1 - 1) = 1/0
    REQUIRE_THROWS_AS(cantor_partials(fact, 0), DegenerateBound);
    CantorSeq twos = make_seq([](unsigned long) { return BigInt(2); }, false);
    CantorPartials ok = cantor_partials(twos, 0);  // bound 1/(2-1), gap is the whole sum
    REQUIRE(ok.p == 0);
    REQUIRE(ok.g == 1);
    REQUIRE(ok.bound == 1);
}

TEST_CASE("malformed digit streams are rejected", "[witness]") {
    CantorSeq bad_digit{[](unsigned long) { return BigInt(2); },
                        [](unsigned long) { return 7; }, false, "bad"};
    REQUIRE_THROWS_AS(cantor_partials(bad_digit, 3), InvalidArgument);
    CantorSeq shrinking = make_seq(
        [](unsigned long n) { return BigInt(n <= 2 ? 5 - n : 2); }, false);
    REQUIRE_THROWS_AS(cantor_partials(shrinking, 4), InvalidArgument);
}
