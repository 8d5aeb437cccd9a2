#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "approx.hpp"
#include "errors.hpp"
#include "number_theory.hpp"
#include "rational.hpp"

namespace diophant {

// rows x cols integer system A x = 0 with more unknowns than equations
struct IntLinearSystem {
    unsigned long rows = 0;
    unsigned long cols = 0;
    std::vector<std::vector<BigInt>> entries;
};

struct SiegelSolution {
    std::vector<BigInt> x;
    BigInt bound;  // certified max-norm ceiling P with P^cols <= N^rows
    BigInt n;      // pigeonhole parameter behind the bound
};

namespace detail {

inline void validate_system(const IntLinearSystem& sys) {
    if (sys.rows < 1) throw DimensionError("siegel: need at least one equation");
    if (sys.cols <= sys.rows) throw DimensionError("siegel: need more unknowns than equations");
    if (sys.entries.size() != sys.rows) throw DimensionError("siegel: row count mismatch");
    for (const auto& row : sys.entries)
        if (row.size() != sys.cols) throw DimensionError("siegel: column count mismatch");
}

inline std::vector<BigInt> apply_system(const IntLinearSystem& sys, const std::vector<BigInt>& x) {
    std::vector<BigInt> y(sys.rows, BigInt(0));
    for (unsigned long m = 0; m < sys.rows; ++m)
        for (unsigned long l = 0; l < sys.cols; ++l) y[m] += sys.entries[m][l] * x[l];
    return y;
}

inline bool all_zero(const std::vector<BigInt>& y) {
    return std::all_of(y.begin(), y.end(), [](const BigInt& v) { return v == 0; });
}

inline BigInt max_norm(const std::vector<BigInt>& x) {
    BigInt m = 0;
    for (const auto& v : x) {
        BigInt a = abs(v);
        if (a > m) m = a;
    }
    return m;
}

inline void make_canonical(std::vector<BigInt>& x) {
    for (const auto& v : x) {
        if (v == 0) continue;
        if (v < 0)
            for (auto& w : x) w = -w;
        return;
    }
}

inline void make_primitive(std::vector<BigInt>& x) {
    BigInt g = 0;
    for (const auto& v : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1)
        for (auto& v : x) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// value-collision scan over [0, P]^cols with every row value packed into one
// machine word; two tuples sharing a value vector differ by a kernel vector
inline std::optional<std::vector<BigInt>> packed_collision(const IntLinearSystem& sys,
                                                           const BigInt& A, const BigInt& P,
                                                           std::uint64_t budget) {
    BigInt tuples = pow_int(P + 1, sys.cols);
    if (tuples > BigInt(budget)) return std::nullopt;
    BigInt reach = BigInt(sys.cols) * A * P;  // row values stay in [-reach, reach]
    BigInt base = 2 * reach + 1;
    if (pow_int(base, sys.rows) > pow2(62)) return std::nullopt;
    if (!mpz_fits_slong_p(reach.get_mpz_t())) return std::nullopt;
    for (const auto& row : sys.entries)
        for (const auto& e : row)
            if (!mpz_fits_slong_p(e.get_mpz_t())) return std::nullopt;

    std::uint64_t total = mpz_get_ui(tuples.get_mpz_t());
    std::uint64_t pp = mpz_get_ui(BigInt(P + 1).get_mpz_t());
    std::int64_t off = mpz_get_si(reach.get_mpz_t());
    std::uint64_t baseu = static_cast<std::uint64_t>(2 * off + 1);
    std::vector<std::vector<std::int64_t>> a(sys.rows, std::vector<std::int64_t>(sys.cols));
    for (unsigned long m = 0; m < sys.rows; ++m)
        for (unsigned long l = 0; l < sys.cols; ++l)
            a[m][l] = mpz_get_si(sys.entries[m][l].get_mpz_t());

    std::vector<std::pair<std::uint64_t, std::uint32_t>> keys;
    keys.reserve(total);
    std::vector<std::int64_t> x(sys.cols, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t key = 0;
        for (unsigned long m = 0; m < sys.rows; ++m) {
            std::int64_t y = 0;
            for (unsigned long l = 0; l < sys.cols; ++l) y += a[m][l] * x[l];
            key = key * baseu + static_cast<std::uint64_t>(y + off);
        }
        keys.emplace_back(key, static_cast<std::uint32_t>(idx));
        std::size_t i = sys.cols;
        while (i > 0 && x[i - 1] == static_cast<std::int64_t>(pp) - 1) x[--i] = 0;
        if (i > 0) ++x[i - 1];
    }
    std::sort(keys.begin(), keys.end());
    auto decode = [&](std::uint64_t idx) {
        std::vector<BigInt> t(sys.cols);
        for (std::size_t l = sys.cols; l-- > 0;) {
            t[l] = BigInt(static_cast<unsigned long>(idx % pp));
            idx /= pp;
        }
        return t;
    };
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (keys[i].first != keys[i - 1].first) continue;
        std::vector<BigInt> lo = decode(keys[i - 1].second), hi = decode(keys[i].second);
        std::vector<BigInt> d(sys.cols);
        for (unsigned long l = 0; l < sys.cols; ++l) d[l] = hi[l] - lo[l];
        make_canonical(d);
        return d;
    }
    throw Error("siegel: collision missing below the pigeonhole count");
}

// map-keyed variant for entries too large to pack
inline std::optional<std::vector<BigInt>> map_collision(const IntLinearSystem& sys, const BigInt& P,
                                                        std::uint64_t budget) {
    if (pow_int(P + 1, sys.cols) > BigInt(budget)) return std::nullopt;
    std::map<std::vector<BigInt>, std::vector<BigInt>> seen;
    std::vector<BigInt> t(sys.cols, BigInt(0));
    for (;;) {
        auto [it, fresh] = seen.emplace(apply_system(sys, t), t);
        if (!fresh) {
            std::vector<BigInt> d(sys.cols);
            for (unsigned long l = 0; l < sys.cols; ++l) d[l] = t[l] - it->second[l];
            make_canonical(d);
            return d;
        }
        std::size_t i = sys.cols;
        while (i > 0 && t[i - 1] == P) t[--i] = 0;
        if (i == 0) throw Error("siegel: collision missing below the pigeonhole count");
        ++t[i - 1];
    }
}

// exact kernel basis over the rationals, scaled to primitive integer vectors
inline std::vector<std::vector<BigInt>> kernel_basis(const IntLinearSystem& sys) {
    unsigned long m = sys.rows, n = sys.cols;
    std::vector<std::vector<ExactRational>> a(m, std::vector<ExactRational>(n, ExactRational(0)));
    for (unsigned long i = 0; i < m; ++i)
        for (unsigned long j = 0; j < n; ++j) a[i][j] = ExactRational(sys.entries[i][j]);
    std::vector<long> pivot_row_of_col(n, -1);
    std::vector<unsigned long> pivot_cols;
    unsigned long r = 0;
    for (unsigned long c = 0; c < n && r < m; ++c) {
        unsigned long sel = r;
        while (sel < m && a[sel][c] == 0) ++sel;
        if (sel == m) continue;
        std::swap(a[sel], a[r]);
        ExactRational piv = a[r][c];
        for (unsigned long j = c; j < n; ++j) a[r][j] /= piv;
        for (unsigned long i = 0; i < m; ++i) {
            if (i == r || a[i][c] == 0) continue;
            ExactRational f = a[i][c];
            for (unsigned long j = c; j < n; ++j) a[i][j] -= ExactRational(f * a[r][j]);
        }
        pivot_row_of_col[c] = static_cast<long>(r);
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<std::vector<BigInt>> basis;
    for (unsigned long f = 0; f < n; ++f) {
        if (pivot_row_of_col[f] >= 0) continue;
        std::vector<ExactRational> v(n, ExactRational(0));
        v[f] = 1;
        for (unsigned long c : pivot_cols) v[c] = ExactRational(-a[pivot_row_of_col[c]][f]);
        BigInt den = 1;
        for (const auto& q : v) {
            BigInt d = q.get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        }
        std::vector<BigInt> w(n);
        for (unsigned long j = 0; j < n; ++j) w[j] = ExactRational(v[j] * ExactRational(den)).get_num();
        make_primitive(w);
        make_canonical(w);
        basis.push_back(std::move(w));
    }
    return basis;
}

// pairwise integer reduction toward shorter Euclidean lengths
inline void reduce_basis(std::vector<std::vector<BigInt>>& basis) {
    auto dot = [](const std::vector<BigInt>& u, const std::vector<BigInt>& v) {
        BigInt s = 0;
        for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
        return s;
    };
    bool changed = true;
    for (unsigned pass = 0; changed && pass < 16; ++pass) {
        changed = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = 0; j < basis.size(); ++j) {
                if (i == j) continue;
                BigInt den = dot(basis[j], basis[j]);
                if (den == 0) continue;
                BigInt num = dot(basis[i], basis[j]);
                BigInt q = floor_of(make_rational(2 * num + den, 2 * den));
                if (q == 0) continue;
                std::vector<BigInt> cand(basis[i].size());
                for (std::size_t l = 0; l < cand.size(); ++l)
                    cand[l] = basis[i][l] - q * basis[j][l];
                if (dot(cand, cand) < dot(basis[i], basis[i])) {
                    basis[i] = std::move(cand);
                    changed = true;
                }
            }
        }
    }
}

// smallest canonical combination of the basis within the coefficient window,
// compared by (max-norm, lex)
inline std::optional<std::vector<BigInt>> best_combo(const std::vector<std::vector<BigInt>>& basis,
                                                     const BigInt& limit) {
    std::size_t d = basis.size(), n = basis[0].size();
    long window = 3;
    while (window > 1 && pow_int(BigInt(2 * window + 1), d) > 200000) --window;
    std::optional<std::vector<BigInt>> best;
    BigInt best_norm = 0;
    if (pow_int(BigInt(2 * window + 1), d) > 200000) {
        for (const auto& v : basis) {
            BigInt nm = max_norm(v);
            if (nm <= limit && (!best || nm < best_norm || (nm == best_norm && v < *best))) {
                best = v;
                best_norm = nm;
            }
        }
        return best;
    }
    std::vector<long> c(d, -window);
    for (;;) {
        std::vector<BigInt> y(n, BigInt(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (c[i] == 0) continue;
            for (std::size_t l = 0; l < n; ++l) y[l] += BigInt(c[i]) * basis[i][l];
        }
        if (!all_zero(y)) {
            make_canonical(y);
            BigInt nm = max_norm(y);
            if (nm <= limit && (!best || nm < best_norm || (nm == best_norm && y < *best))) {
                best = std::move(y);
                best_norm = nm;
            }
        }
        std::size_t i = 0;
        while (i < d && c[i] == window) c[i++] = -window;
        if (i == d) break;
        ++c[i];
    }
    return best;
}

}  // namespace detail

// nonzero integer solution of A x = 0 with max-norm at most
// P = floor(N^{rows/cols}); the bound follows from counting value vectors of
// the box [0, P]^cols against the tuples it contains
inline SiegelSolution siegel_solve(const IntLinearSystem& sys) {
    detail::validate_system(sys);
    unsigned long M = sys.rows, L = sys.cols;
    BigInt A = 0;
    for (const auto& row : sys.entries)
        for (const auto& e : row) {
            BigInt v = abs(e);
            if (v > A) A = v;
        }
    BigInt N = nth_root_floor(pow_int(2 * BigInt(L) * A, L), L - M) + 1;
    BigInt P = nth_root_floor(pow_int(N, M), L);
    if (A == 0) {
        std::vector<BigInt> x(L, BigInt(0));
        x[0] = 1;
        return {x, P, N};
    }

    std::uint64_t small_budget = std::min<std::uint64_t>(limits().enumeration_cap, 200'000);
    if (auto x = detail::packed_collision(sys, A, P, small_budget)) return {*x, P, N};
    if (auto x = detail::map_collision(sys, P, small_budget)) return {*x, P, N};

    auto basis = detail::kernel_basis(sys);
    if (basis.size() == 1) {
        // one-dimensional kernel: the primitive generator divides every
        // solution, and some solution reaches max-norm P
        return {basis[0], P, N};
    }
    detail::reduce_basis(basis);
    if (auto x = detail::best_combo(basis, P)) return {*x, P, N};

    // the counting argument guarantees a collision in this range
    std::uint64_t packed_budget = std::min<std::uint64_t>(limits().enumeration_cap, 4'000'000);
    if (auto x = detail::packed_collision(sys, A, P, packed_budget)) return {*x, P, N};

    // cheap box sweep as the last exact resort
    BigInt span = nth_root_floor(200000, L);
    BigInt radius = span >= 3 ? BigInt((span - 1) / 2) : BigInt(1);
    if (radius > P) radius = P;
    for (const auto& x : detail::box_by_norm(radius, L, 200000)) {
        if (!detail::is_canonical(x)) continue;
        if (detail::all_zero(detail::apply_system(sys, x))) return {x, P, N};
    }
    throw InfeasibleEnumeration("siegel_solve: no vector within the bound was reached");
}

// smallest nonzero solution by (max-norm, lex) among canonical vectors in
// [-radius, radius]^cols; exhaustive, for cross checks
inline std::optional<std::vector<BigInt>> siegel_brute_min(const IntLinearSystem& sys,
                                                           const BigInt& radius) {
    detail::validate_system(sys);
    std::uint64_t budget = std::min<std::uint64_t>(limits().enumeration_cap, 2'000'000);
    for (const auto& x : detail::box_by_norm(radius, sys.cols, budget)) {
        if (!detail::is_canonical(x)) continue;
        if (detail::all_zero(detail::apply_system(sys, x))) return x;
    }
    return std::nullopt;
}

}  // namespace diophant
