#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "approx.hpp"
#include "errors.hpp"
#include "number_theory.hpp"
#include "rational.hpp"
#include "real_oracle.hpp"

namespace diophant {

// Element a + b*sqrt(c) of Z[sqrt(c)]
struct QuadInt {
    BigInt a, b, c;

    QuadInt mul(const QuadInt& o) const {
        if (c != o.c) throw InvalidArgument("QuadInt: mixed radicands");
        return {a * o.a + c * (b * o.b), a * o.b + b * o.a, c};
    }
    QuadInt conj() const { return {a, BigInt(-b), c}; }
    BigInt norm() const { return a * a - c * (b * b); }
    QuadInt pow(unsigned long e) const {
        QuadInt r{1, 0, c}, base = *this;
        for (; e; e >>= 1) {
            if (e & 1) r = r.mul(base);
            base = base.mul(base);
        }
        return r;
    }
    bool operator==(const QuadInt& o) const { return a == o.a && b == o.b && c == o.c; }
};

// exact sign of a + b sqrt(c) for non-square c >= 2
inline int quad_sign(const BigInt& a, const BigInt& b, const BigInt& c) {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs; a^2 = c b^2 would make sqrt(c) rational
    BigInt l = a * a, r = c * (b * b);
    if (l == r) throw InvalidArgument("quad_sign: radicand is a perfect square");
    return l > r ? sa : sb;
}

struct PellSolution {
    BigInt x, y, c;
    bool satisfies() const { return x * x - c * (y * y) == 1; }
};

struct TrivialPellSolutions {
    BigInt c;
    std::vector<std::pair<BigInt, BigInt>> solutions;
    bool y_parametric = false; // c == 0: x = +-1 with y free
};

// Everything learned from the convergent scan
struct PellCertificate {
    PellSolution fundamental;
    std::uint64_t convergents_scanned = 0;
    BigInt residue_min, residue_max;          // extremes of |p^2 - c q^2| seen
    bool residues_in_range = false;           // all residues certified <= 2*sqrt(c) + 1
    std::optional<QuadInt> class_unit;        // unit recovered from a residue-class collision
    std::optional<unsigned> class_unit_power; // class_unit == fundamental^power
};

// Convergents p/q of sqrt(c) via the periodic continued fraction
class SqrtConvergents {
  public:
    explicit SqrtConvergents(const BigInt& c) : c_(c), a0_(isqrt(c)) {
        if (c < 2 || is_perfect_square(c))
            throw InvalidArgument("SqrtConvergents: need non-square c >= 2");
        m_ = 0;
        d_ = 1;
        a_ = a0_;
        h_prev_ = 1;
        h_ = a0_;
        k_prev_ = 0;
        k_ = 1;
    }

    std::pair<BigInt, BigInt> next() {
        if (first_) {
            first_ = false;
            return {h_, k_};
        }
        m_ = d_ * a_ - m_;
        d_ = (c_ - m_ * m_) / d_; // exact by the recurrence invariant
        a_ = (a0_ + m_) / d_;
        BigInt h = a_ * h_ + h_prev_, k = a_ * k_ + k_prev_;
        h_prev_ = h_;
        h_ = h;
        k_prev_ = k_;
        k_ = k;
        return {h_, k_};
    }

  private:
    BigInt c_, a0_, m_, d_, a_, h_prev_, h_, k_prev_, k_;
    bool first_ = true;
};

namespace detail {

// |v| <= 2*sqrt(c) + 1, decided by refining the sqrt enclosure;
// equality is impossible because (|v|-1)/2 is rational and sqrt(c) is not
inline bool residue_in_range(const BigInt& v, const RealOracle& sqrt_c) {
    BigInt av = abs(v);
    if (av <= 1) return true;
    ExactRational half = make_rational(av - 1, 2);
    for (unsigned long k = 16;; k *= 2) {
        unsigned long kk = std::min(k, limits().max_precision_bits);
        DyadicInterval e = sqrt_c.enclosure(kk);
        if (half <= e.lo) return true;
        if (half > e.hi) return false;
        if (kk == limits().max_precision_bits)
            throw PrecisionExhausted("residue range check undecidable");
    }
}

} // namespace detail

// Minimal solution of x^2 - c y^2 = 1 for non-square c >= 2, as the first
// unit-norm convergent of sqrt(c), plus the residue-class bookkeeping the
// scan happens to establish on the way.
inline PellCertificate solve_pell(const BigInt& c) {
    if (is_perfect_square(c)) throw SquareInput("solve_pell: c is a perfect square");
    if (c < 2) throw InvalidArgument("solve_pell: need c >= 2");

    RealOracle sqrt_c = RealOracle::sqrt_of(c);
    SqrtConvergents conv(c);
    PellCertificate cert;
    cert.residues_in_range = true;

    std::map<std::tuple<BigInt, BigInt, BigInt>, std::pair<BigInt, BigInt>> classes;
    std::set<BigInt> residues_checked;
    std::optional<PellSolution> fund;
    std::optional<QuadInt> unit;
    std::uint64_t i = 0, scan_cap = 0;

    for (;; ++i) {
        if (i >= limits().enumeration_cap)
            throw InfeasibleEnumeration("solve_pell: convergent scan exceeds cap");
        auto [p, q] = conv.next();
        BigInt v = p * p - c * (q * q);
        BigInt av = abs(v);
        if (residues_checked.insert(av).second) {
            if (av < cert.residue_min || cert.residue_min == 0) cert.residue_min = av;
            if (av > cert.residue_max) cert.residue_max = av;
            if (!detail::residue_in_range(v, sqrt_c)) cert.residues_in_range = false;
        }
        if (!fund && v == 1) {
            fund = PellSolution{p, q, c};
            scan_cap = std::max<std::uint64_t>(256, 16 * (i + 1));
        }
        if (!unit) {
            auto key = std::make_tuple(v, BigInt(p % av), BigInt(q % av));
            auto [it, inserted] = classes.emplace(key, std::make_pair(p, q));
            if (!inserted) {
                const auto& [p0, q0] = it->second;
                BigInt xi_num = p * p0 - c * (q * q0);
                BigInt eta_num = q * p0 - p * q0;
                // same residue class: both components divisible by v
                if (mpz_divisible_p(xi_num.get_mpz_t(), v.get_mpz_t()) &&
                    mpz_divisible_p(eta_num.get_mpz_t(), v.get_mpz_t())) {
                    QuadInt eps{xi_num / v, eta_num / v, c};
                    eps.a = abs(eps.a);
                    eps.b = abs(eps.b);
                    if (eps.b != 0 && eps.norm() == 1) unit = eps;
                }
            }
        }
        if (fund && (unit || i + 1 >= scan_cap)) {
            cert.convergents_scanned = i + 1;
            break;
        }
    }

    cert.fundamental = *fund;
    if (unit) {
        cert.class_unit = unit;
        QuadInt base{fund->x, fund->y, c}, pow = base;
        for (unsigned j = 1; j <= 64; ++j) {
            if (pow == *unit) {
                cert.class_unit_power = j;
                break;
            }
            pow = pow.mul(base);
        }
    }
    return cert;
}

// Powers base^1 .. base^count of a Pell solution, each verified exactly
inline std::vector<PellSolution> pell_powers(const PellSolution& base, unsigned long count) {
    if (!base.satisfies()) throw InvalidArgument("pell_powers: base is not a solution");
    std::vector<PellSolution> out;
    out.reserve(count);
    QuadInt b{base.x, base.y, base.c}, pow = b;
    for (unsigned long i = 0; i < count; ++i) {
        PellSolution s{pow.a, pow.b, base.c};
        if (!s.satisfies()) throw CertificationFailed("pell_powers: power lost unit norm");
        out.push_back(s);
        pow = pow.mul(b);
    }
    return out;
}

// Closed-form solution sets for the degenerate cases of x^2 - c y^2 = 1
inline TrivialPellSolutions solve_pell_trivial(const BigInt& c) {
    TrivialPellSolutions out;
    out.c = c;
    if (c == -1) {
        out.solutions = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    } else if (c < -1) {
        out.solutions = {{1, 0}, {-1, 0}};
    } else if (c == 0) {
        out.solutions = {{1, 0}, {-1, 0}};
        out.y_parametric = true;
    } else if (is_perfect_square(c)) {
        out.solutions = {{1, 0}, {-1, 0}};
    } else {
        throw NonTrivialCase("solve_pell_trivial: non-square c >= 2 needs the convergent solver");
    }
    return out;
}

struct UnitLinearSolution {
    BigInt n, p; // a*n - b*p == 1
};

// Solve a*n - b*p = 1 for coprime a, b with b >= 1, through the rational
// pigeonhole at N = b - 1; the witness has |n*a/b - p| < 1/(b-1), forcing
// |n*a - p*b| = 1.
inline UnitLinearSolution solve_unit_linear(const BigInt& a, const BigInt& b) {
    if (b < 1) throw InvalidArgument("solve_unit_linear: need b >= 1");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw NotCoprime("solve_unit_linear: gcd(a, b) != 1");
    if (b == 1) return {0, -1};
    ApproxResult r = dirichlet_approx(RealOracle::rational(make_rational(a, b)), b - 1);
    BigInt n = r.n, p = r.p;
    BigInt d = n * a - p * b;
    if (d == -1) {
        n = b - n;
        p = a - p;
        d = n * a - p * b;
    }
    if (d != 1) throw CertificationFailed("solve_unit_linear: residue is not a unit");
    return {n, p};
}

} // namespace diophant
