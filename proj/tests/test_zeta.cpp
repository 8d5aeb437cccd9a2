#include <catch2/catch_amalgamated.hpp>

#include <diophant/zeta.hpp>

using namespace diophant;

namespace {

// sum_{k<=K} 1/((k+r+1)(k+s+1)) with tail in (0, 1/(K+1)]; the geometric
// expansion of 1/(1-xy) integrates term by term to exactly this series
DyadicInterval moment_series(unsigned long r, unsigned long s, unsigned long K) {
    ExactRational sum(0);
    for (unsigned long k = 0; k <= K; ++k)
        sum += make_rational(1, BigInt(k + r + 1) * BigInt(k + s + 1));
    return {sum, sum + make_rational(1, K + 1)};
}

// same expansion against -log(xy): each term contributes
// 1/((k+r+1)^2 (k+s+1)) + 1/((k+r+1)(k+s+1)^2)
DyadicInterval log_moment_series(unsigned long r, unsigned long s, unsigned long K) {
    ExactRational sum(0);
    for (unsigned long k = 0; k <= K; ++k) {
        BigInt u(k + r + 1), v(k + s + 1);
        sum += make_rational(1, u * u * v) + make_rational(1, u * v * v);
    }
    return {sum, sum + make_rational(2, K + 1)};
}

DyadicInterval combo_value(const ZetaCombo& m, unsigned long bits) {
    RealOracle z = m.weight == 2 ? RealOracle::zeta2() : RealOracle::zeta3();
    return shift(scale(z.enclosure(bits), ExactRational(m.zeta_coeff)), m.rational_part);
}

}  // namespace

TEST_CASE("derivative polynomial has the hypergeometric coefficients", "[zeta]") {
    for (unsigned long n = 0; n <= 12; ++n) {
        IntPoly p = legendre_type(n);
        REQUIRE(p.degree() == n);
        REQUIRE(p.coeff[0] == 1);
        for (unsigned long r = 0; r <= n; ++r) {
            BigInt expect = binomial(n, r) * binomial(n + r, r);
            if (r % 2) expect = -expect;
            REQUIRE(p.coeff[r] == expect);
        }
    }
    IntPoly p2 = legendre_type(2);
    REQUIRE(p2.eval(ExactRational(1, 2)) == ExactRational(-1, 2));
    REQUIRE(p2.coeff == std::vector<BigInt>{1, -6, 6});
}

TEST_CASE("harmonic partial sums", "[zeta]") {
    REQUIRE(harmonic(0, 1) == 0);
    REQUIRE(harmonic(3, 1) == ExactRational(11, 6));
    REQUIRE(harmonic(2, 2) == ExactRational(5, 4));
    REQUIRE(harmonic(2, 3) == ExactRational(9, 8));
}

TEST_CASE("kernel moments match the expanded series", "[zeta]") {
    for (unsigned long r = 0; r <= 4; ++r)
        for (unsigned long s = 0; s <= 4; ++s) {
            ZetaCombo m = kernel_moment(r, s);
            REQUIRE(overlaps(combo_value(m, 64), moment_series(r, s, 3000)));
            ZetaCombo lm = log_kernel_moment(r, s);
            REQUIRE(overlaps(combo_value(lm, 64), log_moment_series(r, s, 3000)));
        }
    // spot values: (0,0) is zeta(2); (1,0) telescopes to 1; (1,1) drops the
    // first series term
    REQUIRE(kernel_moment(0, 0).zeta_coeff == 1);
    REQUIRE(kernel_moment(0, 0).rational_part == 0);
    REQUIRE(kernel_moment(1, 0).zeta_coeff == 0);
    REQUIRE(kernel_moment(1, 0).rational_part == 1);
    REQUIRE(kernel_moment(1, 1).rational_part == -1);
    REQUIRE(log_kernel_moment(0, 0).zeta_coeff == 2);
    REQUIRE(log_kernel_moment(0, 0).rational_part == 0);
    REQUIRE(log_kernel_moment(2, 2).rational_part == ExactRational(-9, 4));
}

TEST_CASE("weight-two witness pairs are integral and shrink", "[zeta]") {
    ExactRational prev_mag(-1);
    for (unsigned long n = 0; n <= 12; ++n) {
        ZetaWitness w = zeta2_witness(n);
        REQUIRE(w.v == (n == 0 ? BigInt(1) : lcm_upto(n)));
        REQUIRE(w.a == w.v * w.v * w.alpha);
        REQUIRE(ExactRational(w.b) == ExactRational(w.v * w.v) * w.beta);
        DyadicInterval J = abs_of(witness_form_interval(w, 256));
        REQUIRE(J.lo > 0);
        if (prev_mag >= 0) REQUIRE(J.hi < prev_mag);
        prev_mag = J.lo;
    }
    ZetaWitness w0 = zeta2_witness(0);
    REQUIRE(w0.a == 1);
    REQUIRE(w0.b == 0);
    ZetaWitness w1 = zeta2_witness(1);
    REQUIRE(w1.a == 3);
    REQUIRE(w1.b == -5);
}

TEST_CASE("weight-three witness pairs are integral and shrink", "[zeta]") {
    ExactRational prev_mag(-1);
    for (unsigned long n = 0; n <= 9; ++n) {
        ZetaWitness w = zeta3_witness(n);
        REQUIRE(w.a == pow_int(w.v, 3) * w.alpha);
        REQUIRE(ExactRational(w.b) == ExactRational(pow_int(w.v, 3)) * w.beta);
        DyadicInterval J = abs_of(witness_form_interval(w, 256));
        REQUIRE(J.lo > 0);
        if (prev_mag >= 0) REQUIRE(J.hi < prev_mag);
        prev_mag = J.lo;
    }
    ZetaWitness w0 = zeta3_witness(0);
    REQUIRE(w0.a == 2);
    REQUIRE(w0.b == 0);
    ZetaWitness w1 = zeta3_witness(1);
    REQUIRE(w1.a == 10);
    REQUIRE(w1.b == -12);
}

TEST_CASE("certified envelopes hold along the sequence", "[zeta]") {
    for (unsigned long n = 0; n <= 6; ++n) {
        BoundCheck c2 = check_zeta2_bound(n);
        REQUIRE(c2.positive);
        REQUIRE(c2.within_bound);
        REQUIRE(c2.v_power_ok);
        REQUIRE(c2.majorant_relation == (n == 0 ? 0 : -1));
        REQUIRE(c2.lhs.hi <= c2.rhs.hi);

        BoundCheck c3 = check_zeta3_bound(n);
        REQUIRE(c3.positive);
        REQUIRE(c3.within_bound);
        REQUIRE(c3.v_power_ok);
        REQUIRE(c3.majorant_relation == (n == 0 ? 0 : -1));
    }
}

TEST_CASE("two-variable kernel scan stays under the algebraic maximum", "[zeta]") {
    KernelMaxReport rep = kernel2_report(32);
    REQUIRE(rep.kernel == 2);
    REQUIRE(rep.within_bound);
    // maximum is ((sqrt5 - 1)/2)^5 = 0.0901699...
    REQUIRE(rep.best_value > ExactRational(901, 10000));
    REQUIRE(rep.best_value < ExactRational(9017, 100000));
    REQUIRE(rep.bound_enclosure.contains_zero() == false);
    REQUIRE(rep.max_enclosure.contains(rep.best_value));
    REQUIRE(rep.max_enclosure.hi == rep.bound_enclosure.hi);
    // the sampled argmax sits near the fixed point x = y = (sqrt5 - 1)/2
    for (const auto& q : rep.argmax) {
        REQUIRE(q > ExactRational(3, 5));
        REQUIRE(q < ExactRational(2, 3));
    }
    REQUIRE_THROWS_AS(kernel2_report(1), InvalidArgument);
}

TEST_CASE("three-variable kernel scan stays under the algebraic maximum", "[zeta]") {
    KernelMaxReport rep = kernel3_report(16);
    REQUIRE(rep.kernel == 3);
    REQUIRE(rep.within_bound);
    // maximum is (sqrt2 - 1)^4 = 0.0294372...
    REQUIRE(rep.best_value > ExactRational(294, 10000));
    REQUIRE(rep.best_value < ExactRational(2944, 100000));
    REQUIRE(rep.max_enclosure.contains(rep.best_value));
    REQUIRE_THROWS_AS(kernel3_report(0), InvalidArgument);
}

TEST_CASE("unit powers of quadratic integers", "[zeta]") {
    QuadInt u{-1, 1, 2};
    QuadInt sq = u.pow(2);
    REQUIRE(sq.a == 3);
    REQUIRE(sq.b == -2);
    QuadInt id = u.pow(0);
    REQUIRE(id.a == 1);
    REQUIRE(id.b == 0);
    // (sqrt2 - 1)^4 = 17 - 12 sqrt2
    QuadInt q4 = u.pow(4);
    REQUIRE(q4.a == 17);
    REQUIRE(q4.b == -12);
    REQUIRE(quad_sign(q4.a, q4.b, q4.c) == 1);
}
