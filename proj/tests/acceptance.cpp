#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <diophant/diophant.hpp>

using namespace diophant;

// prints the failing expression and location, then bails out of the criterion
#define REQUIRE(cond)                                                        \
    do {                                                                     \
        if (!(cond)) {                                                       \
            std::printf("  [FAIL] %s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return false;                                                    \
        }                                                                    \
    } while (0)

namespace {

std::mt19937_64 rng(0x5eed1234abcdULL);

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RealOracle random_real() {
    std::uniform_int_distribution<int> kind(0, 3);
    switch (kind(rng)) {
        case 0: {
            std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
            return RealOracle::rational(ExactRational(num(rng), den(rng)));
        }
        case 1: {
            std::uniform_int_distribution<long> c(2, 500);
            BigInt v(c(rng));
            while (is_perfect_square(v)) ++v;
            return RealOracle::sqrt_of(v);
        }
        case 2: return RealOracle::e();
        default: return RealOracle::zeta2();
    }
}

// criterion 1: the one-dimensional pigeonhole certifies across mixed inputs
bool criterion_approx() {
    for (int trial = 0; trial < 500; ++trial) {
        RealOracle alpha = random_real();
        std::uniform_int_distribution<long> nd(1, 10000);
        BigInt N(nd(rng));
        ApproxResult r = dirichlet_approx(alpha, N);
        REQUIRE(r.n >= 1);
        REQUIRE(r.n <= N);
        DyadicInterval gap = abs_of(r.certified_error);
        REQUIRE(gap.hi < make_rational(1, N));
    }
    return true;
}

// criterion 2: joint approximation beats the bound on every row, checked
// exhaustively on all-rational instances
bool criterion_multidim() {
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<std::size_t> md(1, 3), ld(1, 3);
        std::uniform_int_distribution<long> nd(1, 20);
        std::size_t M = md(rng), L = ld(rng);
        BigInt N(nd(rng));
        bool all_rational = trial % 2 == 0;
        std::vector<std::vector<ExactRational>> vals(M, std::vector<ExactRational>(L));
        OracleMatrix om(M);
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t l = 0; l < L; ++l) {
                if (all_rational || (m + l) % 2 == 0) {
                    std::uniform_int_distribution<long> num(-50, 50), den(1, 50);
                    vals[m][l] = ExactRational(num(rng), den(rng));
                    om[m].push_back(RealOracle::rational(vals[m][l]));
                } else {
                    om[m].push_back(RealOracle::sqrt_of(BigInt(2)));
                }
            }
        MultiApproxResult r = multidim_approx(om, N);
        BigInt P = nth_root_floor(pow_int(N, M), L);
        bool nonzero = false;
        for (const auto& v : r.n) {
            REQUIRE(abs(v) <= P);
            if (v != 0) nonzero = true;
        }
        REQUIRE(nonzero);
        for (const auto& e : r.certified_errors)
            REQUIRE(abs_of(e).hi < make_rational(1, N));

        if (!all_rational) continue;
        // exact row check of the returned vector
        for (std::size_t m = 0; m < M; ++m) {
            ExactRational row(0);
            for (std::size_t l = 0; l < L; ++l)
                row += vals[m][l] * ExactRational(r.n[l]);
            row -= ExactRational(r.p[m]);
            REQUIRE(abs(row) < make_rational(1, N));
        }
        // independent pigeonhole confirmation by full enumeration
        if (pow_int(2 * P + 1, L) <= BigInt(200000)) {
            bool exists = false;
            for (const auto& x : detail::box_by_norm(P, L, 200000)) {
                bool good = true;
                for (std::size_t m = 0; m < M && good; ++m) {
                    ExactRational row(0);
                    for (std::size_t l = 0; l < L; ++l)
                        row += vals[m][l] * ExactRational(x[l]);
                    BigInt fl = floor_of(row);
                    ExactRational frac = row - ExactRational(fl);
                    ExactRational d = std::min(frac, ExactRational(1 - frac));
                    if (!(d < make_rational(1, N))) good = false;
                }
                if (good) {
                    exists = true;
                    break;
                }
            }
            REQUIRE(exists);
        }
    }
    return true;
}

// floor sqrt on uint64 with correction steps
std::uint64_t u64_sqrt(std::uint64_t t) {
    auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(t)));
    while (s > 0 && s * s > t) --s;
    while ((s + 1) * (s + 1) <= t) ++s;
    return s;
}

// criterion 3: every fundamental solution below 100 matches direct search
bool criterion_pell() {
    // quadratic-residue masks make the square test cheap
    bool sq64[64] = {};
    for (unsigned i = 0; i < 64; ++i) sq64[(i * i) & 63] = true;
    bool sq63[63] = {};
    for (unsigned i = 0; i < 63; ++i) sq63[(i * i) % 63] = true;
    for (unsigned long c = 2; c <= 100; ++c) {
        if (is_perfect_square(BigInt(c))) continue;
        PellCertificate cert = solve_pell(BigInt(c));
        REQUIRE(cert.fundamental.satisfies());
        REQUIRE(cert.fundamental.x > 0);
        REQUIRE(cert.fundamental.y > 0);
        std::uint64_t yf = mpz_get_ui(cert.fundamental.y.get_mpz_t());
        std::uint64_t xf = mpz_get_ui(cert.fundamental.x.get_mpz_t());
        // no smaller y works
        for (std::uint64_t y = 1; y < yf; ++y) {
            std::uint64_t t = c * y * y + 1;
            if (!sq64[t & 63] || !sq63[t % 63]) continue;
            std::uint64_t s = u64_sqrt(t);
            REQUIRE(s * s != t);
        }
        std::uint64_t t = c * yf * yf + 1;
        REQUIRE(u64_sqrt(t) * u64_sqrt(t) == t);
        REQUIRE(u64_sqrt(t) == xf);
    }
    PellCertificate big = solve_pell(BigInt(61));
    REQUIRE(big.fundamental.x == BigInt("1766319049"));
    REQUIRE(big.fundamental.y == BigInt("226153980"));
    return true;
}

// criterion 4: the zeta(2) witness chain certifies and converges
bool criterion_zeta2() {
    ExactRational prev(-1);
    for (unsigned long n = 0; n <= 15; ++n) {
        ZetaWitness w = zeta2_witness(n);
        REQUIRE(w.a == w.v * w.v * w.alpha);
        REQUIRE(is_integer(ExactRational(w.v * w.v) * w.beta));
        BoundCheck c = check_zeta2_bound(n);
        REQUIRE(c.positive);
        REQUIRE(c.within_bound);
        REQUIRE(c.v_power_ok);
        DyadicInterval J = abs_of(witness_form_interval(w, 320));
        REQUIRE(J.lo > 0);
        if (prev >= 0) REQUIRE(J.hi < prev);
        prev = J.lo;
        if (n >= 10) {
            // alpha zeta2 + beta -> 0 forces -beta/alpha -> zeta2
            REQUIRE(w.alpha != 0);
            DyadicInterval dist = scale(J, ExactRational(1) / ExactRational(BigInt(abs(w.alpha))));
            REQUIRE(dist.hi < ExactRational(1, 1000000));
        }
    }
    return true;
}

// criterion 5: the zeta(3) witness chain certifies and converges
bool criterion_zeta3() {
    ExactRational prev(-1);
    for (unsigned long n = 0; n <= 10; ++n) {
        ZetaWitness w = zeta3_witness(n);
        REQUIRE(w.a == pow_int(w.v, 3) * w.alpha);
        REQUIRE(is_integer(ExactRational(pow_int(w.v, 3)) * w.beta));
        BoundCheck c = check_zeta3_bound(n);
        REQUIRE(c.positive);
        REQUIRE(c.within_bound);
        REQUIRE(c.v_power_ok);
        REQUIRE(c.majorant_relation <= 0);
        DyadicInterval J = abs_of(witness_form_interval(w, 320));
        REQUIRE(J.lo > 0);
        if (prev >= 0) REQUIRE(J.hi < prev);
        prev = J.lo;
    }
    return true;
}

// criterion 6: lcm(1..n) <= 3^n for every n up to 10^5, exactly
bool criterion_lcm_growth() {
    LcmSequence seq(100000);
    BigInt pow3 = 3;
    REQUIRE(seq.value() <= 1);
    for (std::uint64_t n = 2; n <= 100000; ++n) {
        const BigInt& v = seq.push();
        pow3 *= 3;
        REQUIRE(v <= pow3);
    }
    return true;
}

// criterion 7: small kernel vectors for random underdetermined systems
bool criterion_siegel() {
    std::uniform_int_distribution<long> ent(-5, 5);
    std::uniform_int_distribution<unsigned long> ld(2, 4);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned long L = ld(rng);
        std::uniform_int_distribution<unsigned long> md(1, L - 1);
        unsigned long M = md(rng);
        IntLinearSystem sys;
        sys.rows = M;
        sys.cols = L;
        sys.entries.assign(M, std::vector<BigInt>(L));
        for (auto& row : sys.entries)
            for (auto& e : row) e = BigInt(ent(rng));
        SiegelSolution r = siegel_solve(sys);
        std::vector<BigInt> y = detail::apply_system(sys, r.x);
        REQUIRE(detail::all_zero(y));
        BigInt nm = 0;
        for (const auto& v : r.x) {
            BigInt a = abs(v);
            if (a > nm) nm = a;
        }
        REQUIRE(nm >= 1);
        REQUIRE(nm <= r.bound);
        BigInt radius = L == 2 ? BigInt(50) : L == 3 ? BigInt(20) : BigInt(8);
        auto brute = siegel_brute_min(sys, radius);
        if (brute) {
            BigInt bm = 0;
            for (const auto& v : *brute) {
                BigInt a = abs(v);
                if (a > bm) bm = a;
            }
            REQUIRE(bm <= nm);
        } else {
            REQUIRE(nm > radius);
        }
    }
    return true;
}

// criterion 8: irrationality witnesses and the rational obstruction scan
bool criterion_witness() {
    for (const RealOracle& alpha : {RealOracle::sqrt_of(BigInt(2)), RealOracle::e(),
                                    RealOracle::zeta2()}) {
        IrrationalityWitness w = find_witness(alpha, ExactRational(1, 1000000));
        DyadicInterval gap = abs_of(w.certified_value);
        REQUIRE(gap.lo > 0);
        REQUIRE(gap.hi < ExactRational(1, 1000000));
        REQUIRE(w.x >= 1);
    }
    std::uniform_int_distribution<long> ad(-10000, 10000), bd(1, 50);
    for (int trial = 0; trial < 200; ++trial) {
        ObstructionReport rep = rational_obstruction(BigInt(ad(rng)), BigInt(bd(rng)),
                                                     BigInt(1000));
        REQUIRE(rep.violations.empty());
        REQUIRE(rep.pairs_checked == 2001);
    }
    return true;
}

// criterion 9: factorial-base partial sums trap (e - 1) within 1/N
bool criterion_cantor() {
    CantorSeq fact{[](unsigned long n) { return BigInt(n); },
                   [](unsigned long) { return 1; }, true, "factorial"};
    for (unsigned long N = 1; N <= 20; ++N) {
        CantorPartials r = cantor_partials(fact, N);
        REQUIRE(r.bound == make_rational(1, N));
        REQUIRE(r.certified_gap.lo > 0);
        REQUIRE(r.certified_gap.hi <= r.bound);
    }
    return true;
}

// criterion 10: dense kernel scans stay under the algebraic maxima
bool criterion_kernels() {
    KernelMaxReport k2 = kernel2_report(128);
    REQUIRE(k2.within_bound);
    REQUIRE(k2.best_value > ExactRational(9, 100));
    KernelMaxReport k3 = kernel3_report(128);
    REQUIRE(k3.within_bound);
    REQUIRE(k3.best_value > ExactRational(29, 1000));
    return true;
}

struct Criterion {
    const char* label;
    bool (*fn)();
    double budget_s;
};

}  // namespace

int main() {
    const Criterion table[] = {
        {"one-dimensional approximation, 500 mixed targets", criterion_approx, 10.0},
        {"joint approximation with exhaustive cross checks", criterion_multidim, 30.0},
        {"fundamental solutions match direct search to c = 100", criterion_pell, 10.0},
        {"zeta(2) witness chain, n <= 15", criterion_zeta2, 60.0},
        {"zeta(3) witness chain, n <= 10", criterion_zeta3, 60.0},
        {"lcm growth stays under 3^n to n = 100000", criterion_lcm_growth, 10.0},
        {"small kernel vectors, 200 random systems", criterion_siegel, 30.0},
        {"irrationality witnesses and rational obstructions", criterion_witness, 20.0},
        {"factorial partial sums trap e - 1", criterion_cantor, 5.0},
        {"kernel scans on the 128 grid", criterion_kernels, 10.0},
    };
    int failures = 0;
    for (const Criterion& c : table) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = c.fn();
        double dt = seconds_since(t0);
        if (ok && dt > c.budget_s) {
            std::printf("  [FAIL] time budget: %.2fs > %.2fs\n", dt, c.budget_s);
            ok = false;
        }
        std::printf("[%s] %s (%.2fs)\n", ok ? "PASS" : "FAIL", c.label, dt);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
