#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <diophant/interval.hpp>

using namespace diophant;

namespace {

std::mt19937_64 rng(20240811);

ExactRational rand_rat() {
    std::uniform_int_distribution<int> num(-50, 50), den(1, 20);
    return ExactRational(num(rng), den(rng));
}

DyadicInterval rand_interval() {
    ExactRational a = rand_rat(), b = rand_rat();
    return a <= b ? DyadicInterval(a, b) : DyadicInterval(b, a);
}

ExactRational rand_in(const DyadicInterval& v) {
    std::uniform_int_distribution<int> t(0, 16);
    return v.lo + v.width() * ExactRational(t(rng), 16);
}

}  // namespace

TEST_CASE("interval basics", "[interval]") {
    DyadicInterval v(ExactRational(-1, 2), ExactRational(3, 4));
    REQUIRE(v.width() == ExactRational(5, 4));
    REQUIRE(v.mid() == ExactRational(1, 8));
    REQUIRE(v.contains(ExactRational(0)));
    REQUIRE(v.contains_zero());
    REQUIRE_FALSE(v.certainly_positive());
    REQUIRE_FALSE(v.certainly_negative());
    REQUIRE(DyadicInterval::point(ExactRational(2)).is_point());
    REQUIRE_THROWS_AS(DyadicInterval(ExactRational(1), ExactRational(0)), InvalidArgument);
}

TEST_CASE("arithmetic preserves membership", "[interval]") {
    for (int trial = 0; trial < 300; ++trial) {
        DyadicInterval a = rand_interval(), b = rand_interval();
        ExactRational x = rand_in(a), y = rand_in(b);
        REQUIRE((a + b).contains(x + y));
        REQUIRE((a - b).contains(x - y));
        REQUIRE((a * b).contains(ExactRational(x * y)));
        REQUIRE((-a).contains(ExactRational(-x)));
        ExactRational c = rand_rat();
        REQUIRE(scale(a, c).contains(ExactRational(c * x)));
        REQUIRE(shift(a, c).contains(x + c));
        REQUIRE(abs_of(a).contains(ExactRational(abs(x))));
        if (b.lo > 0) REQUIRE(div_pos(a, b).contains(ExactRational(x / y)));
    }
}

TEST_CASE("absolute value cases", "[interval]") {
    REQUIRE(abs_of({ExactRational(2), ExactRational(5)}).lo == 2);
    REQUIRE(abs_of({ExactRational(-5), ExactRational(-2)}).lo == 2);
    DyadicInterval straddle(ExactRational(-3), ExactRational(2));
    REQUIRE(abs_of(straddle).lo == 0);
    REQUIRE(abs_of(straddle).hi == 3);
}

TEST_CASE("powers of nonnegative intervals", "[interval]") {
    DyadicInterval v(ExactRational(1, 2), ExactRational(3, 2));
    DyadicInterval cubed = pow_nonneg(v, 3);
    REQUIRE(cubed.lo == ExactRational(1, 8));
    REQUIRE(cubed.hi == ExactRational(27, 8));
    REQUIRE(pow_nonneg(v, 0).is_point());
    REQUIRE_THROWS_AS(pow_nonneg({ExactRational(-1), ExactRational(1)}, 2), InvalidArgument);
}

TEST_CASE("outward rounding contains and stays close", "[interval]") {
    for (int trial = 0; trial < 200; ++trial) {
        DyadicInterval a = rand_interval();
        unsigned long m = 8;
        DyadicInterval r = outward_round(a, m);
        REQUIRE(r.lo <= a.lo);
        REQUIRE(r.hi >= a.hi);
        REQUIRE(r.width() <= a.width() + ExactRational(2, 1) / ExactRational(pow2(m)));
        // endpoints land on the dyadic grid
        REQUIRE(is_integer(ExactRational(r.lo * pow2(m))));
        REQUIRE(is_integer(ExactRational(r.hi * pow2(m))));
    }
}

TEST_CASE("intersection and overlap", "[interval]") {
    DyadicInterval a(ExactRational(0), ExactRational(2));
    DyadicInterval b(ExactRational(1), ExactRational(3));
    DyadicInterval c(ExactRational(5), ExactRational(6));
    REQUIRE(overlaps(a, b));
    REQUIRE_FALSE(overlaps(a, c));
    DyadicInterval m = intersect(a, b);
    REQUIRE(m.lo == 1);
    REQUIRE(m.hi == 2);
    REQUIRE_THROWS_AS(intersect(a, c), InvalidArgument);
    // touching endpoints still overlap
    REQUIRE(overlaps(a, {ExactRational(2), ExactRational(4)}));
}

TEST_CASE("division requires a positive divisor", "[interval]") {
    DyadicInterval a(ExactRational(1), ExactRational(2));
    REQUIRE_THROWS_AS(div_pos(a, {ExactRational(0), ExactRational(1)}), InvalidArgument);
    REQUIRE_THROWS_AS(div_pos(a, {ExactRational(-1), ExactRational(1)}), InvalidArgument);
    DyadicInterval q = div_pos({ExactRational(-4), ExactRational(8)},
                               {ExactRational(2), ExactRational(4)});
    REQUIRE(q.lo == -2);
    REQUIRE(q.hi == 4);
}
