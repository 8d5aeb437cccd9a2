#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"
#include "number_theory.hpp"
#include "rational.hpp"
#include "real_oracle.hpp"

namespace diophant {

using OracleMatrix = std::vector<std::vector<RealOracle>>;

// One-dimensional result: 1 <= n <= n_limit and |n*alpha - p| < 1/n_limit,
// witnessed by certified_error (an enclosure of n*alpha - p).
struct ApproxResult {
    BigInt n;
    BigInt p;
    DyadicInterval certified_error;
    BigInt n_limit;
};

// Joint result for an M x L system: x = n (length L, not all zero,
// max |n_l| <= coeff_bound) and p (length M) with every row value
// sum_l alpha_{ml} n_l - p_m inside certified_errors[m], each < error_bound.
struct MultiApproxResult {
    std::vector<BigInt> n;
    std::vector<BigInt> p;
    std::vector<DyadicInterval> certified_errors;
    BigInt coeff_bound;
    ExactRational error_bound;
    BigInt n_limit;
};

// Homogeneous small-values result for M < L forms: x nonzero with
// max |x_l| <= height_bound and every |sum_l alpha_{ml} x_l| certified
// to lie within value_bound.
struct LinearFormResult {
    std::vector<BigInt> x;
    std::vector<DyadicInterval> certified_values;
    DyadicInterval value_bound;
    BigInt height_bound;
    BigInt n_limit;
};

// [r, r+1]/2^m enclosing x^(1/l); collapses to a point at exact roots
inline DyadicInterval nth_root_interval(const BigInt& x, unsigned long l, unsigned long m) {
    if (x < 0 || l == 0) throw InvalidArgument("nth_root_interval: need x >= 0, l >= 1");
    BigInt scaled = x * pow_int(pow2(m), l);
    BigInt r;
    int exact = mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), l);
    BigInt den = pow2(m);
    if (exact) return DyadicInterval::point(make_rational(r, den));
    return {make_rational(r, den), make_rational(r + 1, den)};
}

namespace detail {

// control flow: a bucket assignment is undecidable at the current precision
struct NeedRefine {};

// floor decided only when both endpoints agree
inline BigInt certain_floor(const DyadicInterval& v) {
    BigInt fl = floor_of(v.lo);
    if (!v.is_point() && floor_of(v.hi) != fl) throw NeedRefine{};
    return fl;
}

// index of the width-1/N bucket holding f, for f enclosed in [0, 1)
inline BigInt certain_bucket(const DyadicInterval& f, const BigInt& N) {
    BigInt bl = floor_of(f.lo * ExactRational(N));
    if (!f.is_point() && floor_of(f.hi * ExactRational(N)) != bl) throw NeedRefine{};
    return bl;
}

inline void validate_matrix(const OracleMatrix& a) {
    if (a.empty() || a[0].empty()) throw DimensionError("empty coefficient matrix");
    for (const auto& row : a)
        if (row.size() != a[0].size()) throw DimensionError("ragged coefficient matrix");
}

// digits of t in base `base`, last coordinate fastest
inline std::vector<BigInt> decode_tuple(std::uint64_t t, std::uint64_t base, std::size_t L) {
    std::vector<BigInt> q(L);
    for (std::size_t i = L; i-- > 0;) {
        q[i] = BigInt(static_cast<unsigned long>(t % base));
        t /= base;
    }
    return q;
}

// true when the first nonzero coordinate is positive
inline bool is_canonical(const std::vector<BigInt>& n) {
    for (const auto& v : n)
        if (v != 0) return v > 0;
    return false;
}

// first nonzero coordinate made positive; p follows the flip
inline void sign_normalize(std::vector<BigInt>& n, std::vector<BigInt>& p) {
    for (const auto& v : n) {
        if (v == 0) continue;
        if (v < 0) {
            for (auto& w : n) w = -w;
            for (auto& w : p) w = -w;
        }
        return;
    }
}

struct ScanHit {
    BigInt n, p;
};

inline ScanHit scan_line(const RealOracle& alpha, const BigInt& N, unsigned long k) {
    DyadicInterval E = alpha.enclosure(k);
    std::map<BigInt, std::pair<BigInt, BigInt>> buckets; // bucket -> (j, floor(j*alpha))
    DyadicInterval v = DyadicInterval::point(0);
    for (BigInt j = 0; j <= N; ++j) {
        if (j > 0) v = v + E;
        BigInt fl = certain_floor(v);
        DyadicInterval f = shift(v, ExactRational(BigInt(-fl)));
        BigInt b = certain_bucket(f, N);
        auto [it, inserted] = buckets.emplace(b, std::make_pair(j, fl));
        if (!inserted)
            return {j - it->second.first, fl - it->second.second};
    }
    throw Error("pigeonhole scan failed to collide"); // unreachable: N+1 values, N buckets
}

} // namespace detail

// Smallest-index pigeonhole witness: 1 <= n <= N and |n*alpha - p| < 1/N.
inline ApproxResult dirichlet_approx(const RealOracle& alpha, const BigInt& N) {
    if (N < 1) throw InvalidArgument("dirichlet_approx: N must be >= 1");
    if (N + 1 > BigInt(limits().enumeration_cap))
        throw InfeasibleEnumeration("dirichlet_approx: N + 1 exceeds enumeration cap");
    ExactRational inv_n = make_rational(1, N);
    unsigned long k = 2 * bit_length(N) + 16;
    for (;;) {
        unsigned long kk = std::min(k, limits().max_precision_bits);
        try {
            detail::ScanHit hit = detail::scan_line(alpha, N, kk);
            for (unsigned long kc = kk;; kc *= 2) {
                unsigned long kcc = std::min(kc, limits().max_precision_bits);
                DyadicInterval err = shift(scale(alpha.enclosure(kcc), ExactRational(hit.n)),
                                           ExactRational(BigInt(-hit.p)));
                if (abs_of(err).hi < inv_n) return {hit.n, hit.p, err, N};
                if (kcc == limits().max_precision_bits)
                    throw PrecisionExhausted("dirichlet_approx: certificate undecidable");
            }
        } catch (const detail::NeedRefine&) {
            if (kk == limits().max_precision_bits)
                throw PrecisionExhausted("dirichlet_approx: bucket undecidable at max precision");
            k *= 2;
        }
    }
}

namespace detail {

struct MultiHit {
    std::vector<BigInt> n, p;
};

inline MultiHit scan_grid(const OracleMatrix& A, const BigInt& N, std::uint64_t base,
                          std::uint64_t total, unsigned long k) {
    std::size_t M = A.size(), L = A[0].size();
    std::vector<std::vector<DyadicInterval>> E(M, std::vector<DyadicInterval>(L));
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t l = 0; l < L; ++l) E[m][l] = A[m][l].enclosure(k);
    std::map<std::vector<BigInt>, std::pair<std::uint64_t, std::vector<BigInt>>> buckets;
    for (std::uint64_t t = 0; t < total; ++t) {
        std::vector<BigInt> q = decode_tuple(t, base, L);
        std::vector<BigInt> key, floors(M);
        key.reserve(M);
        for (std::size_t m = 0; m < M; ++m) {
            DyadicInterval y = DyadicInterval::point(0);
            for (std::size_t l = 0; l < L; ++l)
                if (q[l] != 0) y = y + scale(E[m][l], ExactRational(q[l]));
            BigInt fl = certain_floor(y);
            floors[m] = fl;
            key.push_back(certain_bucket(shift(y, ExactRational(BigInt(-fl))), N));
        }
        auto [it, inserted] = buckets.emplace(std::move(key), std::make_pair(t, floors));
        if (!inserted) {
            std::vector<BigInt> q0 = decode_tuple(it->second.first, base, L);
            MultiHit hit;
            hit.n.resize(L);
            hit.p.resize(M);
            for (std::size_t l = 0; l < L; ++l) hit.n[l] = q[l] - q0[l];
            for (std::size_t m = 0; m < M; ++m) hit.p[m] = floors[m] - it->second.second[m];
            sign_normalize(hit.n, hit.p);
            return hit;
        }
    }
    throw Error("pigeonhole scan failed to collide"); // unreachable: total > N^M buckets
}

// row value enclosures for a fixed integer vector, at precision k
inline std::vector<DyadicInterval> row_values(const OracleMatrix& A,
                                              const std::vector<BigInt>& x, unsigned long k) {
    std::vector<DyadicInterval> ys;
    ys.reserve(A.size());
    for (const auto& row : A) {
        DyadicInterval y = DyadicInterval::point(0);
        for (std::size_t l = 0; l < row.size(); ++l)
            if (x[l] != 0) y = y + scale(row[l].enclosure(k), ExactRational(x[l]));
        ys.push_back(y);
    }
    return ys;
}

// all integer vectors in [-P, P]^L ordered by (max-norm, lex); excludes zero
inline std::vector<std::vector<BigInt>> box_by_norm(const BigInt& P, std::size_t L,
                                                    std::uint64_t budget) {
    BigInt span = 2 * P + 1;
    if (pow_int(span, L) > BigInt(budget))
        throw InfeasibleEnumeration("fallback box exceeds enumeration budget");
    std::uint64_t base = mpz_get_ui(span.get_mpz_t());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < L; ++i) total *= base;
    std::vector<std::pair<BigInt, std::vector<BigInt>>> keyed;
    keyed.reserve(total - 1);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::vector<BigInt> x = decode_tuple(t, base, L);
        BigInt norm = 0;
        bool zero = true;
        for (auto& v : x) {
            v -= P;
            if (v != 0) zero = false;
            BigInt a = abs(v);
            if (a > norm) norm = a;
        }
        if (!zero) keyed.emplace_back(std::move(norm), std::move(x));
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<BigInt>> out;
    out.reserve(keyed.size());
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
}

// Exhaustive certification sweep used when bucket membership stays undecidable:
// scans [-P, P]^L small-norm first, rounding each row value to its nearest
// integer and keeping the first vector whose rows all certify strictly.
inline std::optional<MultiApproxResult> grid_fallback(const OracleMatrix& A, const BigInt& N,
                                                      const BigInt& P) {
    std::size_t M = A.size(), L = A[0].size();
    std::uint64_t budget = std::min<std::uint64_t>(limits().enumeration_cap, 2'000'000);
    ExactRational inv_n = make_rational(1, N);
    for (const auto& x : box_by_norm(P, L, budget)) {
        if (!is_canonical(x)) continue; // -x covers the same certificate
        std::vector<BigInt> p(M);
        std::vector<DyadicInterval> errs(M);
        bool ok = true;
        for (unsigned long k = 2 * bit_length(N) + 2 * bit_length(P) + 16; ok; k *= 2) {
            unsigned long kk = std::min(k, limits().max_precision_bits);
            std::vector<DyadicInterval> ys = row_values(A, x, kk);
            bool all_certified = true;
            for (std::size_t m = 0; m < M; ++m) {
                p[m] = floor_of(ys[m].mid() + make_rational(1, 2));
                errs[m] = shift(ys[m], ExactRational(BigInt(-p[m])));
                DyadicInterval a = abs_of(errs[m]);
                if (a.lo >= inv_n) { // certainly violates
                    ok = false;
                    all_certified = false;
                    break;
                }
                if (!(a.hi < inv_n)) all_certified = false;
            }
            if (ok && all_certified)
                return MultiApproxResult{x, p, errs, P, inv_n, N};
            if (kk == limits().max_precision_bits) break; // undecidable: skip candidate
        }
    }
    return std::nullopt;
}

} // namespace detail

// Joint pigeonhole witness for an M x L coefficient matrix: a nonzero integer
// vector n with max |n_l| <= P = floor(N^(M/L)) and |sum_l alpha_{ml} n_l - p_m| < 1/N
// for every row.
inline MultiApproxResult multidim_approx(const OracleMatrix& alpha, const BigInt& N) {
    detail::validate_matrix(alpha);
    if (N < 1) throw InvalidArgument("multidim_approx: N must be >= 1");
    std::size_t M = alpha.size(), L = alpha[0].size();
    BigInt P = nth_root_floor(pow_int(N, static_cast<unsigned long>(M)),
                              static_cast<unsigned long>(L));
    BigInt tuple_count = pow_int(P + 1, static_cast<unsigned long>(L));
    if (tuple_count > BigInt(limits().enumeration_cap))
        throw InfeasibleEnumeration("multidim_approx: (P+1)^L exceeds enumeration cap");
    std::uint64_t base = mpz_get_ui(BigInt(P + 1).get_mpz_t());
    std::uint64_t total = mpz_get_ui(tuple_count.get_mpz_t());
    ExactRational inv_n = make_rational(1, N);
    unsigned long k = bit_length(N) + bit_length(P) + 24;
    for (;;) {
        unsigned long kk = std::min(k, limits().max_precision_bits);
        try {
            detail::MultiHit hit = detail::scan_grid(alpha, N, base, total, kk);
            for (unsigned long kc = kk;; kc *= 2) {
                unsigned long kcc = std::min(kc, limits().max_precision_bits);
                std::vector<DyadicInterval> errs = detail::row_values(alpha, hit.n, kcc);
                bool certified = true;
                for (std::size_t m = 0; m < M; ++m) {
                    errs[m] = shift(errs[m], ExactRational(BigInt(-hit.p[m])));
                    if (!(abs_of(errs[m]).hi < inv_n)) certified = false;
                }
                if (certified)
                    return MultiApproxResult{hit.n, hit.p, errs, P, inv_n, N};
                if (kcc == limits().max_precision_bits)
                    throw PrecisionExhausted("multidim_approx: certificate undecidable");
            }
        } catch (const detail::NeedRefine&) {
            if (kk == limits().max_precision_bits) {
                auto fb = detail::grid_fallback(alpha, N, P);
                if (fb) return *fb;
                throw PrecisionExhausted("multidim_approx: no vector certifiable");
            }
            k *= 2;
        }
    }
}

// Simultaneous approximation of M reals by one denominator: column-matrix case,
// 1 <= n <= N^M and |n*alpha_m - p_m| < 1/N for all m.
inline MultiApproxResult simultaneous_approx(const std::vector<RealOracle>& alphas,
                                             const BigInt& N) {
    OracleMatrix A;
    A.reserve(alphas.size());
    for (const auto& a : alphas) A.push_back({a});
    return multidim_approx(A, N);
}

// Single linear form in L reals: row-matrix case, nonzero n with
// max |n_l| <= floor(N^(1/L)) and |sum alpha_l n_l - p| < 1/N.
inline MultiApproxResult linear_form_approx(const std::vector<RealOracle>& alphas,
                                            const BigInt& N) {
    if (alphas.empty()) throw DimensionError("linear_form_approx: empty form");
    return multidim_approx({alphas}, N);
}

namespace detail {

// pointwise max of |entry| enclosures: the true max magnitude lies inside
inline DyadicInterval magnitude_bound(const OracleMatrix& A, unsigned long k) {
    ExactRational lo = 0, hi = 0;
    for (const auto& row : A)
        for (const auto& e : row) {
            DyadicInterval a = abs_of(e.enclosure(k));
            lo = std::max(lo, a.lo);
            hi = std::max(hi, a.hi);
        }
    return {lo, hi};
}

inline std::vector<BigInt> unit_vector(std::size_t L) {
    std::vector<BigInt> x(L, BigInt(0));
    x[0] = 1;
    return x;
}

} // namespace detail

// Small values of M < L homogeneous forms: nonzero x, max |x_l| <= floor(N^(M/L)),
// each |sum_l alpha_{ml} x_l| certified within value_bound, where value_bound
// encloses 2*L*A*N^(M/L-1) (L*A when N = 1) and A = max |alpha_{ml}|.
inline LinearFormResult small_linear_forms(const OracleMatrix& alpha, const BigInt& N) {
    detail::validate_matrix(alpha);
    std::size_t M = alpha.size(), L = alpha[0].size();
    if (!(M < L)) throw DimensionError("small_linear_forms: need M < L");
    if (N < 1) throw InvalidArgument("small_linear_forms: N must be >= 1");
    BigInt P = nth_root_floor(pow_int(N, static_cast<unsigned long>(M)),
                              static_cast<unsigned long>(L));

    bool all_zero = true;
    for (const auto& row : alpha)
        for (const auto& e : row)
            if (!e.is_rational() || e.rational_value() != 0) all_zero = false;
    if (all_zero) {
        std::vector<DyadicInterval> zeros(M, DyadicInterval::point(0));
        return {detail::unit_vector(L), zeros, DyadicInterval::point(0), P, N};
    }

    // certify |row values of x| <= lo(bound) by joint refinement
    auto certify = [&](const std::vector<BigInt>& x, unsigned long k0, bool n_is_one)
        -> std::optional<LinearFormResult> {
        for (unsigned long k = k0;; k *= 2) {
            unsigned long kk = std::min(k, limits().max_precision_bits);
            DyadicInterval a_int = detail::magnitude_bound(alpha, kk);
            DyadicInterval bound;
            if (n_is_one) {
                bound = scale(a_int, ExactRational(static_cast<unsigned long>(L)));
            } else {
                DyadicInterval root = nth_root_interval(
                    pow_int(N, static_cast<unsigned long>(L - M)),
                    static_cast<unsigned long>(L), kk);
                bound = div_pos(scale(a_int, ExactRational(2 * static_cast<unsigned long>(L))),
                                root);
            }
            std::vector<DyadicInterval> ys = detail::row_values(alpha, x, kk);
            bool ok = true;
            for (const auto& y : ys) {
                DyadicInterval a = abs_of(y);
                if (a.lo > bound.hi) return std::nullopt; // certainly violates
                if (!(a.hi <= bound.lo)) ok = false;
            }
            if (ok) return LinearFormResult{x, ys, bound, P, N};
            if (kk == limits().max_precision_bits) return std::nullopt;
        }
    };

    unsigned long k0 = bit_length(N) + bit_length(P) + 24;
    if (N == 1) {
        auto r = certify(detail::unit_vector(L), k0, true);
        if (r) return *r;
        throw PrecisionExhausted("small_linear_forms: unit vector certificate undecidable");
    }

    BigInt tuple_count = pow_int(P + 1, static_cast<unsigned long>(L));
    if (tuple_count > BigInt(limits().enumeration_cap))
        throw InfeasibleEnumeration("small_linear_forms: (P+1)^L exceeds enumeration cap");
    std::uint64_t base = mpz_get_ui(BigInt(P + 1).get_mpz_t());
    std::uint64_t total = mpz_get_ui(tuple_count.get_mpz_t());
    // buckets per row; (P+1)^L - 1 >= Npp^M keeps the pigeonhole strict
    BigInt Npp = nth_root_floor(tuple_count - 1, static_cast<unsigned long>(M));

    unsigned long k = k0;
    for (;;) {
        unsigned long kk = std::min(k, limits().max_precision_bits);
        try {
            DyadicInterval a_int = detail::magnitude_bound(alpha, kk);
            // padding keeps cell edges off exact multiples of the enclosure endpoints
            ExactRational Q = a_int.hi * ExactRational(static_cast<unsigned long>(L)) *
                                  ExactRational(P) +
                              1;
            std::vector<std::vector<DyadicInterval>> E(M, std::vector<DyadicInterval>(L));
            for (std::size_t m = 0; m < M; ++m)
                for (std::size_t l = 0; l < L; ++l) E[m][l] = alpha[m][l].enclosure(kk);
            // value-space buckets: slice [-Q, Q] into Npp cells per row
            auto bucket_of = [&](const ExactRational& v) {
                BigInt b = floor_of((v + Q) * ExactRational(Npp) / (2 * Q));
                if (b < 0) b = 0;
                if (b >= Npp) b = Npp - 1;
                return b;
            };
            std::map<std::vector<BigInt>, std::uint64_t> buckets;
            for (std::uint64_t t = 0; t < total; ++t) {
                std::vector<BigInt> q = detail::decode_tuple(t, base, L);
                std::vector<BigInt> key;
                key.reserve(M);
                for (std::size_t m = 0; m < M; ++m) {
                    DyadicInterval y = DyadicInterval::point(0);
                    for (std::size_t l = 0; l < L; ++l)
                        if (q[l] != 0) y = y + scale(E[m][l], ExactRational(q[l]));
                    BigInt bl = bucket_of(y.lo), bh = bucket_of(y.hi);
                    if (bl != bh) throw detail::NeedRefine{};
                    key.push_back(bl);
                }
                auto [it, inserted] = buckets.emplace(std::move(key), t);
                if (!inserted) {
                    std::vector<BigInt> q0 = detail::decode_tuple(it->second, base, L);
                    std::vector<BigInt> x(L), none;
                    for (std::size_t l = 0; l < L; ++l) x[l] = q[l] - q0[l];
                    detail::sign_normalize(x, none);
                    auto r = certify(x, kk, false);
                    if (r) return *r;
                    throw detail::NeedRefine{}; // equality-tight candidate: try others
                }
            }
            throw Error("pigeonhole scan failed to collide"); // unreachable
        } catch (const detail::NeedRefine&) {
            if (kk == limits().max_precision_bits) break;
            k *= 2;
        }
    }

    // a strictly satisfying vector exists in the box; sweep it
    std::uint64_t budget = std::min<std::uint64_t>(limits().enumeration_cap, 2'000'000);
    for (const auto& x : detail::box_by_norm(P, L, budget)) {
        if (!detail::is_canonical(x)) continue; // -x covers the same certificate
        auto r = certify(x, k0, false);
        if (r) return *r;
    }
    throw CertificationFailed("small_linear_forms: no vector in the box certifies");
}

// Strictly improving stream of reduced fractions p/q with |alpha - p/q| < 1/q^2,
// produced by running the pigeonhole with doubling N.
class ApproxStream {
  public:
    struct Item {
        ExactRational fraction;
        DyadicInterval certified_error; // encloses alpha - fraction
        BigInt n_limit;
    };

    explicit ApproxStream(const RealOracle& alpha) : alpha_(alpha) {
        if (!alpha_.certified_irrational())
            throw IrrationalRequired("approximation stream requires a certified irrational");
    }

    Item next() {
        for (;;) {
            ApproxResult r = dirichlet_approx(alpha_, N_);
            N_ *= 2;
            ExactRational frac = make_rational(r.p, r.n);
            if (frac.get_den() <= last_den_) continue;
            ExactRational target =
                make_rational(1, BigInt(frac.get_den() * frac.get_den()));
            for (unsigned long k = 2 * bit_length(BigInt(frac.get_den())) + 16;; k *= 2) {
                unsigned long kk = std::min(k, limits().max_precision_bits);
                DyadicInterval err = shift(alpha_.enclosure(kk), ExactRational(-frac));
                if (abs_of(err).hi < target) {
                    last_den_ = frac.get_den();
                    return {frac, err, r.n_limit};
                }
                if (kk == limits().max_precision_bits)
                    throw PrecisionExhausted("approximation stream: certificate undecidable");
            }
        }
    }

  private:
    RealOracle alpha_;
    BigInt N_ = 1;
    BigInt last_den_ = 0;
};

} // namespace diophant
