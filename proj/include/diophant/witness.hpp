#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "approx.hpp"
#include "real_oracle.hpp"

namespace diophant {

// pair (x, y) with 0 < |alpha x - y| < eps, certified through the enclosed value
struct IrrationalityWitness {
    BigInt x;
    BigInt y;
    ExactRational eps;
    DyadicInterval certified_value;   // encloses alpha x - y, sign definite
};

inline IrrationalityWitness find_witness(const RealOracle& alpha, const ExactRational& eps) {
    if (eps <= 0) throw InvalidArgument("find_witness: eps must be positive");
    if (!alpha.certified_irrational())
        throw IrrationalRequired("find_witness: target must be certified irrational");
    // one pigeonhole pass at N = ceil(1/eps) already gives |alpha n - p| < 1/N <= eps
    BigInt N = ceil_of(ExactRational(1) / eps);
    if (N < 1) N = 1;
    ApproxResult r = dirichlet_approx(alpha, N);
    // the value is nonzero since alpha is irrational; certify its strict sign
    unsigned long k = bit_length(N) + 8;
    for (;;) {
        unsigned long kk = std::min(k, limits().max_precision_bits);
        DyadicInterval v = shift(scale(alpha.enclosure(kk), ExactRational(r.n)),
                                 ExactRational(BigInt(-r.p)));
        DyadicInterval a = abs_of(v);
        if (a.lo > 0 && a.hi < eps) return {r.n, r.p, eps, v};
        if (kk == limits().max_precision_bits)
            throw PrecisionExhausted("find_witness: sign of alpha x - y undecided");
        k *= 2;
    }
}

// for alpha = a/b no integer pair (x, y) satisfies 0 < |alpha x - y| < 1/b;
// the scan records any counterexample with |x| <= x_limit (there are none)
struct ObstructionReport {
    BigInt a;
    BigInt b;
    BigInt x_limit;
    ExactRational threshold;
    BigInt pairs_checked;
    std::vector<std::pair<BigInt, BigInt>> violations;
};

inline ObstructionReport rational_obstruction(const BigInt& a, const BigInt& b,
                                              const BigInt& x_limit) {
    if (b < 1) throw InvalidArgument("rational_obstruction: denominator must be positive");
    if (x_limit < 0) throw InvalidArgument("rational_obstruction: negative scan limit");
    ObstructionReport rep{a, b, x_limit, make_rational(1, b), 0, {}};
    for (BigInt x = -x_limit; x <= x_limit; ++x) {
        BigInt ax = a * x;
        BigInt fl, r;
        mpz_fdiv_qr(fl.get_mpz_t(), r.get_mpz_t(), ax.get_mpz_t(), b.get_mpz_t());
        // distance from ax/b to the nearest integer y is min(r, b - r)/b
        BigInt d = std::min(r, BigInt(b - r));
        if (d > 0 && d < 1) {
            BigInt y = 2 * r <= b ? fl : BigInt(fl + 1);
            rep.violations.emplace_back(x, y);
        }
        ++rep.pairs_checked;
    }
    return rep;
}

// partial data for a Cantor series value alpha = sum z_n / (g_1 ... g_n):
// numerator P_N, product G_N, tail bound 1/(g_{N+1} - 1), and the certified
// gap G_N alpha - P_N lying in (0, bound]
struct CantorPartials {
    BigInt p;
    BigInt g;
    ExactRational bound;
    DyadicInterval certified_gap;
};

inline CantorPartials cantor_partials(const CantorSeq& seq, unsigned long terms) {
    BigInt p = 0, g_accum = 1, g_prev = 0;
    for (unsigned long n = 1; n <= terms; ++n) {
        BigInt gn = detail::checked_g(seq, n, g_prev);
        g_prev = gn;
        p = p * gn + detail::checked_z(seq, n);
        g_accum *= gn;
    }
    BigInt g_next = detail::checked_g(seq, terms + 1, g_prev);
    if (g_next == 1)
        throw DegenerateBound("cantor_partials: g(N+1) = 1 yields no tail bound");
    ExactRational bound = make_rational(1, BigInt(g_next - 1));
    RealOracle alpha = RealOracle::cantor(seq);
    unsigned long k = bit_length(g_accum) + 8;
    for (;;) {
        unsigned long kk = std::min(k, limits().max_precision_bits);
        DyadicInterval gap = shift(scale(alpha.enclosure(kk), ExactRational(g_accum)),
                                   ExactRational(BigInt(-p)));
        // the upper bound holds at any precision fine enough to pass term N;
        // positivity needs a nonzero digit beyond N to enter the enclosure
        if (gap.lo > 0 && gap.hi <= bound) return {p, g_accum, bound, gap};
        if (kk == limits().max_precision_bits)
            throw PrecisionExhausted("cantor_partials: positive tail undecided");
        k *= 2;
    }
}

}  // namespace diophant
