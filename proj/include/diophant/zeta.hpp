#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "interval.hpp"
#include "number_theory.hpp"
#include "pell.hpp"
#include "rational.hpp"
#include "real_oracle.hpp"

namespace diophant {

// dense integer polynomial, coeff[i] multiplies x^i
struct IntPoly {
    std::vector<BigInt> coeff;

    unsigned long degree() const { return coeff.empty() ? 0 : coeff.size() - 1; }
    ExactRational eval(const ExactRational& x) const {
        ExactRational r(0);
        for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) r = r * x + ExactRational(*it);
        return r;
    }
};

// (1/n!) d^n/dx^n [x^n (1-x)^n]; integral coefficients with constant term 1
inline IntPoly legendre_type(unsigned long n) {
    std::vector<BigInt> u(2 * n + 1, BigInt(0));
    for (unsigned long j = 0; j <= n; ++j) {
        BigInt t = binomial(n, j);
        u[n + j] = j % 2 == 0 ? t : BigInt(-t);
    }
    BigInt nf = factorial(n);
    std::vector<BigInt> out(n + 1);
    for (unsigned long d = 0; d <= n; ++d) {
        // the n-th derivative maps x^{n+d} to ((n+d)!/d!) x^d
        BigInt fall = 1;
        for (unsigned long i = d + 1; i <= n + d; ++i) fall *= i;
        BigInt num = u[n + d] * fall;
        if (!mpz_divisible_p(num.get_mpz_t(), nf.get_mpz_t()))
            throw Error("legendre_type: non-integral coefficient");
        mpz_divexact(out[d].get_mpz_t(), num.get_mpz_t(), nf.get_mpz_t());
    }
    if (out[0] != 1) throw Error("legendre_type: constant term is not 1");
    return {out};
}

inline ExactRational harmonic(unsigned long r, unsigned power) {
    ExactRational s(0);
    for (unsigned long j = 1; j <= r; ++j) s += make_rational(1, pow_int(BigInt(j), power));
    return s;
}

// value = zeta_coeff * zeta(weight) + rational_part
struct ZetaCombo {
    int weight;
    BigInt zeta_coeff;
    ExactRational rational_part;
};

// integral of x^r y^s / (1 - xy) over the unit square
inline ZetaCombo kernel_moment(unsigned long r, unsigned long s) {
    if (r == s) return {2, 1, ExactRational(-harmonic(r, 2))};
    auto [lo, hi] = std::minmax(r, s);
    ExactRational num = harmonic(hi, 1) - harmonic(lo, 1);
    return {2, 0, num / ExactRational(BigInt(hi - lo))};
}

// integral of -log(xy) x^r y^s / (1 - xy) over the unit square
inline ZetaCombo log_kernel_moment(unsigned long r, unsigned long s) {
    if (r == s) return {3, 2, ExactRational(-2) * harmonic(r, 3)};
    auto [lo, hi] = std::minmax(r, s);
    ExactRational num = harmonic(hi, 2) - harmonic(lo, 2);
    return {3, 0, num / ExactRational(BigInt(hi - lo))};
}

// a zeta(weight) + b = V^weight * (alpha zeta(weight) + beta), V = lcm(1..n)
struct ZetaWitness {
    unsigned long n;
    int weight;
    BigInt alpha;
    ExactRational beta;
    BigInt v;
    BigInt a;
    BigInt b;
};

namespace detail {

inline BigInt lcm_or_one(unsigned long n) { return n == 0 ? BigInt(1) : lcm_upto(n); }

inline ZetaWitness scale_witness(unsigned long n, int weight, const BigInt& alpha,
                                 const ExactRational& beta) {
    BigInt v = lcm_or_one(n);
    BigInt vw = pow_int(v, static_cast<unsigned long>(weight));
    ExactRational sb = ExactRational(vw) * beta;
    if (!is_integer(sb)) throw Error("zeta witness: scaled rational part is not integral");
    return {n, weight, alpha, beta, v, BigInt(vw * alpha), sb.get_num()};
}

}  // namespace detail

// row weights (-1)^s C(n,s) against the moment table: the double integral of
// P_n(x) (1-y)^n / (1 - xy) collapses to alpha zeta(2) + beta
inline ZetaWitness zeta2_witness(unsigned long n) {
    IntPoly p = legendre_type(n);
    BigInt alpha = 0;
    ExactRational beta(0);
    for (unsigned long r = 0; r <= n; ++r) {
        for (unsigned long s = 0; s <= n; ++s) {
            BigInt w = binomial(n, s);
            if (s % 2) w = -w;
            BigInt c = p.coeff[r] * w;
            ZetaCombo m = kernel_moment(r, s);
            alpha += c * m.zeta_coeff;
            beta += ExactRational(c) * m.rational_part;
        }
    }
    return detail::scale_witness(n, 2, alpha, beta);
}

// P_n(x) P_n(y) against the log moments: alpha zeta(3) + beta
inline ZetaWitness zeta3_witness(unsigned long n) {
    IntPoly p = legendre_type(n);
    BigInt alpha = 0;
    ExactRational beta(0);
    for (unsigned long r = 0; r <= n; ++r) {
        for (unsigned long s = 0; s <= n; ++s) {
            BigInt c = p.coeff[r] * p.coeff[s];
            ZetaCombo m = log_kernel_moment(r, s);
            alpha += c * m.zeta_coeff;
            beta += ExactRational(c) * m.rational_part;
        }
    }
    return detail::scale_witness(n, 3, alpha, beta);
}

// encloses alpha zeta(weight) + beta, the unscaled integral value
inline DyadicInterval witness_form_interval(const ZetaWitness& w, unsigned long k) {
    RealOracle z = w.weight == 2 ? RealOracle::zeta2() : RealOracle::zeta3();
    return shift(scale(z.enclosure(k), ExactRational(w.alpha)), w.beta);
}

struct BoundCheck {
    unsigned long n;
    int weight;
    bool positive;          // |a zeta + b| > 0 certified
    bool within_bound;      // |a zeta + b| <= bound certified
    DyadicInterval lhs;     // encloses |a zeta + b|
    DyadicInterval rhs;     // encloses the bound
    bool v_power_ok;        // V(n) <= 3^n, exact
    int majorant_relation;  // chain factor vs its reference: -1 below, 0 equal, +1 above
    unsigned long bits_used;
};

namespace detail {

// decide |A z + B| <= C (ua + ub u) z over z in Z, u in U; the form is
// bilinear in (z, u), so extremes over the box sit at corners
inline int corner_compare(const BigInt& A, const BigInt& B, const ExactRational& C,
                          const BigInt& ua, const BigInt& ub, const DyadicInterval& Z,
                          const DyadicInterval& U) {
    bool all_le = true;
    for (int s : {1, -1}) {
        bool all_gt = true;
        for (const ExactRational& z : {Z.lo, Z.hi}) {
            for (const ExactRational& u : {U.lo, U.hi}) {
                ExactRational f = ExactRational(s) * (ExactRational(A) * z + ExactRational(B)) -
                                  C * (ExactRational(ua) + ExactRational(ub) * u) * z;
                if (f > 0) all_le = false;
                if (f <= 0) all_gt = false;
            }
        }
        if (all_gt) return -1;  // this sign certainly exceeds the bound
    }
    return all_le ? 1 : 0;
}

inline BoundCheck check_bound(const ZetaWitness& w, const ExactRational& C, const QuadInt& radical,
                              const RealOracle& zeta, const RealOracle& root,
                              int majorant_relation) {
    bool positive = false, pos_decided = w.a == 0;
    if (pos_decided) positive = w.b != 0;
    unsigned long k = 32;
    for (;;) {
        unsigned long kk = std::min(k, limits().max_precision_bits);
        DyadicInterval Z = zeta.enclosure(kk), U = root.enclosure(kk);
        DyadicInterval val = shift(scale(Z, ExactRational(w.a)), ExactRational(w.b));
        if (!pos_decided && (val.lo > 0 || val.hi < 0)) {
            positive = true;
            pos_decided = true;
        }
        int cmp = corner_compare(w.a, w.b, C, radical.a, radical.b, Z, U);
        if (pos_decided && cmp != 0) {
            DyadicInterval rhs =
                scale(shift(scale(U, ExactRational(radical.b)), ExactRational(radical.a)) * Z, C);
            bool v_ok = w.v <= pow_int(BigInt(3), w.n);
            return {w.n, w.weight, positive, cmp > 0, abs_of(val), rhs, v_ok, majorant_relation, kk};
        }
        if (kk == limits().max_precision_bits)
            throw PrecisionExhausted("zeta bound check: comparison undecided");
        k *= 2;
    }
}

}  // namespace detail

// |a zeta(2) + b| <= V^2 ((sqrt5 - 1)/2)^{5n} zeta(2); the majorant relation
// compares 9^n (sqrt5 - 1)^{5n} against 2^{5n}
inline BoundCheck check_zeta2_bound(unsigned long n) {
    ZetaWitness w = zeta2_witness(n);
    QuadInt g = QuadInt{-1, 1, 5}.pow(5 * n);
    ExactRational C = make_rational(w.v * w.v, pow2(5 * n));
    BigInt nine_n = pow_int(BigInt(9), n);
    int rel = quad_sign(BigInt(nine_n * g.a - pow2(5 * n)), BigInt(nine_n * g.b), 5);
    return detail::check_bound(w, C, g, RealOracle::zeta2(), RealOracle::sqrt_of(5), rel);
}

// |a zeta(3) + b| <= 2 * 27^n (sqrt2 - 1)^{4n} zeta(3); the majorant relation
// compares 27^n (sqrt2 - 1)^{4n} against (4/5)^n
inline BoundCheck check_zeta3_bound(unsigned long n) {
    ZetaWitness w = zeta3_witness(n);
    QuadInt g = QuadInt{-1, 1, 2}.pow(4 * n);
    ExactRational C = ExactRational(2) * ExactRational(pow_int(BigInt(27), n));
    BigInt f135 = pow_int(BigInt(135), n);
    int rel = quad_sign(BigInt(f135 * g.a - pow_int(BigInt(4), n)), BigInt(f135 * g.b), 2);
    return detail::check_bound(w, C, g, RealOracle::zeta3(), RealOracle::sqrt_of(2), rel);
}

struct KernelMaxReport {
    int kernel;  // number of variables
    unsigned long grid;
    std::vector<ExactRational> argmax;
    ExactRational best_value;
    bool within_bound;               // best_value < algebraic maximum, exact test
    DyadicInterval bound_enclosure;  // the algebraic maximum
    DyadicInterval max_enclosure;    // [best sampled value, bound upper end]
    unsigned long refine_levels;
};

namespace detail {

inline ExactRational kernel2_value(const ExactRational& x, const ExactRational& y) {
    return ExactRational(x * (1 - x) * y * (1 - y)) / ExactRational(1 - x * y);
}

inline ExactRational kernel3_value(const ExactRational& x, const ExactRational& y,
                                   const ExactRational& z) {
    ExactRational num = x * (1 - x) * y * (1 - y) * z * (1 - z);
    return num / ExactRational(1 - ExactRational(1 - x * y) * z);
}

inline bool interior(const ExactRational& t) { return t > 0 && t < 1; }

// hill climb on the dyadic refinement of the grid around the start point
template <typename Eval>
inline void refine_max(std::vector<ExactRational>& at, ExactRational& best, unsigned long grid,
                       unsigned long levels, Eval&& eval) {
    std::size_t dim = at.size();
    for (unsigned long t = 1; t <= levels; ++t) {
        ExactRational step = make_rational(1, BigInt(grid) * pow2(t));
        for (unsigned moves = 0; moves < 64; ++moves) {
            bool improved = false;
            std::vector<long> off(dim, -1);
            for (;;) {
                std::vector<ExactRational> cand = at;
                bool ok = true;
                for (std::size_t i = 0; i < dim; ++i) {
                    cand[i] += ExactRational(off[i]) * step;
                    if (!interior(cand[i])) ok = false;
                }
                if (ok) {
                    ExactRational v = eval(cand);
                    if (v > best) {
                        best = v;
                        at = cand;
                        improved = true;
                        break;
                    }
                }
                std::size_t i = 0;
                while (i < dim && off[i] == 1) off[i++] = -1;
                if (i == dim) break;
                ++off[i];
            }
            if (!improved) break;
        }
    }
}

}  // namespace detail

// exact sweep of x(1-x)y(1-y)/(1-xy) on the grid (i/g, j/g), then a local
// dyadic refinement; the maximum over the square is ((sqrt5 - 1)/2)^5
inline KernelMaxReport kernel2_report(unsigned long grid, unsigned long levels = 8) {
    if (grid < 2) throw InvalidArgument("kernel2_report: grid must be >= 2");
    if (BigInt(grid - 1) * BigInt(grid - 1) > BigInt(limits().enumeration_cap))
        throw InfeasibleEnumeration("kernel2_report: grid too large");
    BigInt g(grid), g2 = g * g;
    // compare i(g-i)j(g-j) / (g^2 - ij); the constant g^2 scale cancels
    BigInt bn = 0, bd = 1;
    unsigned long bi = 1, bj = 1;
    std::vector<BigInt> side(grid);
    for (unsigned long i = 1; i < grid; ++i) side[i] = BigInt(i) * BigInt(grid - i);
    for (unsigned long i = 1; i < grid; ++i) {
        for (unsigned long j = i; j < grid; ++j) {  // symmetric kernel
            BigInt num = side[i] * side[j];
            BigInt den = g2 - BigInt(i) * BigInt(j);
            if (num * bd > bn * den) {
                bn = num;
                bd = den;
                bi = i;
                bj = j;
            }
        }
    }
    std::vector<ExactRational> at{make_rational(bi, g), make_rational(bj, g)};
    ExactRational best = make_rational(bn, BigInt(g2 * bd));
    detail::refine_max(at, best, grid, levels, [](const std::vector<ExactRational>& p) {
        return detail::kernel2_value(p[0], p[1]);
    });
    // best < (5 sqrt5 - 11)/2 iff (2 best + 11)^2 < 125
    ExactRational t = 2 * best + 11;
    bool within = t * t < 125;
    DyadicInterval bound =
        scale(shift(scale(RealOracle::sqrt_of(5).enclosure(64), ExactRational(5)),
                    ExactRational(-11)),
              make_rational(1, 2));
    DyadicInterval top = within ? DyadicInterval{best, bound.hi} : DyadicInterval{best, best};
    return {2, grid, at, best, within, bound, top, levels};
}

// exact sweep of xyz(1-x)(1-y)(1-z)/(1-(1-xy)z) on the cubic grid; the
// maximum over the cube is (sqrt2 - 1)^4
inline KernelMaxReport kernel3_report(unsigned long grid, unsigned long levels = 8) {
    if (grid < 2) throw InvalidArgument("kernel3_report: grid must be >= 2");
    BigInt cells = BigInt(grid - 1) * BigInt(grid - 1) * BigInt(grid - 1);
    if (cells > BigInt(limits().enumeration_cap))
        throw InfeasibleEnumeration("kernel3_report: grid too large");
    BigInt g(grid), g2 = g * g, g3 = g2 * g;
    BigInt bn = 0, bd = 1;
    unsigned long bi = 1, bj = 1, bk = 1;
    std::vector<BigInt> side(grid);
    for (unsigned long i = 1; i < grid; ++i) side[i] = BigInt(i) * BigInt(grid - i);
    for (unsigned long i = 1; i < grid; ++i) {
        for (unsigned long j = i; j < grid; ++j) {  // symmetric in the first two
            BigInt sij = side[i] * side[j];
            BigInt gij = g2 - BigInt(i) * BigInt(j);
            for (unsigned long k = 1; k < grid; ++k) {
                BigInt num = sij * side[k];
                BigInt den = g3 - gij * BigInt(k);
                if (num * bd > bn * den) {
                    bn = num;
                    bd = den;
                    bi = i;
                    bj = j;
                    bk = k;
                }
            }
        }
    }
    std::vector<ExactRational> at{make_rational(bi, g), make_rational(bj, g), make_rational(bk, g)};
    ExactRational best = make_rational(bn, BigInt(g3 * bd));
    detail::refine_max(at, best, grid, levels, [](const std::vector<ExactRational>& p) {
        return detail::kernel3_value(p[0], p[1], p[2]);
    });
    // best < 17 - 12 sqrt2 iff 288 < (17 - best)^2
    ExactRational t = 17 - best;
    bool within = ExactRational(288) < t * t && t > 0;
    DyadicInterval bound =
        shift(scale(RealOracle::sqrt_of(2).enclosure(64), ExactRational(-12)), ExactRational(17));
    DyadicInterval top = within ? DyadicInterval{best, bound.hi} : DyadicInterval{best, best};
    return {3, grid, at, best, within, bound, top, levels};
}

}  // namespace diophant
