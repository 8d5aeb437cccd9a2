#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <variant>

#include "errors.hpp"
#include "interval.hpp"
#include "number_theory.hpp"
#include "rational.hpp"

namespace diophant {

// Digit description of a Cantor series sum_{n>=1} z_n / (g_1 g_2 ... g_n).
// Indices start at 1. Validity (g_1 >= 1, g_n >= 2 for n >= 2, g nondecreasing,
// z_n in {0,1}) is checked as digits are consumed. g_unbounded is the caller's
// assertion that g_n -> infinity; it gates irrationality certification.
struct CantorSeq {
    std::function<BigInt(unsigned long)> g;
    std::function<int(unsigned long)> z;
    bool g_unbounded = false;
    std::string label;
};

namespace detail {

// digit validation shared by the enclosure engine and the partial-sum reports
inline BigInt checked_g(const CantorSeq& seq, unsigned long n, const BigInt& prev) {
    BigInt gn = seq.g(n);
    if (n == 1 && gn < 1) throw InvalidArgument("cantor: g(1) must be >= 1");
    if (n >= 2 && gn < 2) throw InvalidArgument("cantor: g(n) must be >= 2 for n >= 2");
    if (n >= 2 && gn < prev) throw InvalidArgument("cantor: g must be nondecreasing");
    return gn;
}

inline int checked_z(const CantorSeq& seq, unsigned long n) {
    int zn = seq.z(n);
    if (zn != 0 && zn != 1) throw InvalidArgument("cantor: digits must be 0 or 1");
    return zn;
}

struct RationalDesc {
    ExactRational value;
};
struct SqrtDesc {
    BigInt c; // non-square, >= 2
};
struct EulerDesc {};
struct Zeta2Desc {};
struct Zeta3Desc {};
struct CantorDesc {
    CantorSeq seq;
};

} // namespace detail

// A real number presented through certified enclosures: enclosure(k) returns
// a closed rational interval of width <= 2^-k that contains the value.
// Copies share one enclosure cache, so refinement done through any copy is
// visible to all.
class RealOracle {
    struct AffineDesc {
        std::shared_ptr<const RealOracle> base;
        ExactRational scale;  // nonzero
        ExactRational offset;
    };

    using Desc = std::variant<detail::RationalDesc, detail::SqrtDesc, detail::EulerDesc,
                              detail::Zeta2Desc, detail::Zeta3Desc, detail::CantorDesc,
                              AffineDesc>;

    struct Cache {
        std::mutex m;
        bool filled = false;
        unsigned long bits = 0;
        DyadicInterval box;
    };

  public:
    static RealOracle rational(const ExactRational& v) {
        return RealOracle(detail::RationalDesc{v});
    }

    // sqrt(c) for c >= 0; perfect squares collapse to the rational oracle
    static RealOracle sqrt_of(const BigInt& c) {
        if (c < 0) throw InvalidArgument("sqrt_of: negative radicand");
        if (is_perfect_square(c)) return rational(ExactRational(isqrt(c)));
        return RealOracle(detail::SqrtDesc{c});
    }

    static RealOracle e() {
        static const RealOracle inst{Desc{detail::EulerDesc{}}};
        return inst;
    }

    static RealOracle zeta2() {
        static const RealOracle inst{Desc{detail::Zeta2Desc{}}};
        return inst;
    }

    static RealOracle zeta3() {
        static const RealOracle inst{Desc{detail::Zeta3Desc{}}};
        return inst;
    }

    static RealOracle cantor(CantorSeq seq) {
        if (!seq.g || !seq.z) throw InvalidArgument("cantor: missing digit generators");
        return RealOracle(detail::CantorDesc{std::move(seq)});
    }

    // scale * base + offset; degenerate scales collapse to the rational oracle
    static RealOracle affine(const RealOracle& base, const ExactRational& sc,
                             const ExactRational& off) {
        if (sc == 0) return rational(off);
        if (base.is_rational()) return rational(sc * base.rational_value() + off);
        return RealOracle(AffineDesc{std::make_shared<RealOracle>(base), sc, off});
    }

    bool is_rational() const {
        return std::holds_alternative<detail::RationalDesc>(*desc_);
    }

    const ExactRational& rational_value() const {
        auto* r = std::get_if<detail::RationalDesc>(desc_.get());
        if (!r) throw InvalidArgument("rational_value on irrational oracle");
        return r->value;
    }

    // true only when irrationality is established by the descriptor itself
    bool certified_irrational() const {
        if (std::holds_alternative<detail::SqrtDesc>(*desc_)) return true;
        if (std::holds_alternative<detail::EulerDesc>(*desc_)) return true;
        if (std::holds_alternative<detail::Zeta2Desc>(*desc_)) return true;
        if (std::holds_alternative<detail::Zeta3Desc>(*desc_)) return true;
        if (auto* c = std::get_if<detail::CantorDesc>(desc_.get()))
            return c->seq.g_unbounded;
        if (auto* a = std::get_if<AffineDesc>(desc_.get()))
            return a->base->certified_irrational();
        return false;
    }

    std::string describe() const {
        if (auto* r = std::get_if<detail::RationalDesc>(desc_.get()))
            return "rat:" + to_string(r->value);
        if (auto* s = std::get_if<detail::SqrtDesc>(desc_.get()))
            return "sqrt:" + to_string(s->c);
        if (std::holds_alternative<detail::EulerDesc>(*desc_)) return "e";
        if (std::holds_alternative<detail::Zeta2Desc>(*desc_)) return "zeta2";
        if (std::holds_alternative<detail::Zeta3Desc>(*desc_)) return "zeta3";
        if (auto* c = std::get_if<detail::CantorDesc>(desc_.get()))
            return "cantor:" + c->seq.label;
        auto* a = std::get_if<AffineDesc>(desc_.get());
        return "affine(" + to_string(a->scale) + "," + to_string(a->offset) + ";" +
               a->base->describe() + ")";
    }

    // closed interval of width <= 2^-k containing the value
    DyadicInterval enclosure(unsigned long k) const {
        if (k > limits().max_precision_bits)
            throw PrecisionExhausted("enclosure request beyond max_precision_bits");
        std::lock_guard<std::mutex> lock(cache_->m);
        if (cache_->filled && cache_->bits >= k) return cache_->box;
        DyadicInterval box = compute(k);
        cache_->filled = true;
        cache_->bits = k;
        cache_->box = box;
        return box;
    }

  private:
    explicit RealOracle(Desc d)
        : desc_(std::make_shared<Desc>(std::move(d))), cache_(std::make_shared<Cache>()) {}

    DyadicInterval compute(unsigned long k) const {
        if (auto* r = std::get_if<detail::RationalDesc>(desc_.get()))
            return DyadicInterval::point(r->value);
        if (auto* s = std::get_if<detail::SqrtDesc>(desc_.get())) return sqrt_box(s->c, k);
        if (std::holds_alternative<detail::EulerDesc>(*desc_)) return euler_box(k);
        if (std::holds_alternative<detail::Zeta2Desc>(*desc_)) return zeta2_box(k);
        if (std::holds_alternative<detail::Zeta3Desc>(*desc_)) return zeta3_box(k);
        if (auto* c = std::get_if<detail::CantorDesc>(desc_.get()))
            return cantor_box(c->seq, k);
        auto* a = std::get_if<AffineDesc>(desc_.get());
        // widen the inner request so the scaled width still fits under 2^-k
        unsigned long extra = bit_length(BigInt(abs(a->scale.get_num()))) + 1;
        DyadicInterval inner = a->base->enclosure(k + extra);
        return shift(scale(inner, a->scale), a->offset);
    }

    // [s, s+1] / 2^(k+1) where s = isqrt(c * 4^(k+1)); width 2^-(k+1)
    static DyadicInterval sqrt_box(const BigInt& c, unsigned long k) {
        unsigned long m = k + 1;
        BigInt two_m = pow2(m);
        BigInt s = isqrt(c * two_m * two_m);
        return {make_rational(s, two_m), make_rational(s + 1, two_m)};
    }

    // sum of 1/i! with tail < 2/(K+1)!; endpoints stay exact
    static DyadicInterval euler_box(unsigned long k) {
        BigInt a = 1, fact = 1; // a/fact = sum_{i<=K} 1/i!
        unsigned long kk = 0;
        BigInt threshold = pow2(k + 2);
        BigInt next_fact = 1;
        for (;;) {
            next_fact = fact * BigInt(kk + 1);
            if (next_fact >= threshold) break;
            a = a * BigInt(kk + 1) + 1;
            fact = next_fact;
            ++kk;
        }
        ExactRational s = make_rational(a, fact);
        ExactRational tail = make_rational(2, next_fact);
        return {s, s + tail};
    }

    // 3 * sum_{j>=1} 1/(j^2 binom(2j,j)); term ratio < 1/4
    static DyadicInterval zeta2_box(unsigned long k) {
        ExactRational target = make_rational(1, pow2(k + 2));
        ExactRational s = 0;
        BigInt central = 2; // binom(2j, j) at j = 1
        unsigned long j = 1;
        for (;;) {
            s += make_rational(3, BigInt(j) * BigInt(j) * central);
            BigInt num = central * BigInt(2 * (2 * j + 1));
            mpz_divexact_ui(central.get_mpz_t(), num.get_mpz_t(), j + 1);
            ++j;
            ExactRational maj = make_rational(4, BigInt(j) * BigInt(j) * central);
            if (maj <= target) return outward_round({s, s + maj}, k + 2);
        }
    }

    // (5/2) * sum_{j>=1} (-1)^(j-1)/(j^3 binom(2j,j)); |term| ratio < 1/4
    static DyadicInterval zeta3_box(unsigned long k) {
        ExactRational target = make_rational(1, pow2(k + 3));
        ExactRational s = 0;
        BigInt central = 2;
        unsigned long j = 1;
        int sign = 1;
        for (;;) {
            ExactRational t =
                make_rational(5, BigInt(2) * BigInt(j) * BigInt(j) * BigInt(j) * central);
            s += sign > 0 ? t : ExactRational(-t);
            BigInt num = central * BigInt(2 * (2 * j + 1));
            mpz_divexact_ui(central.get_mpz_t(), num.get_mpz_t(), j + 1);
            ++j;
            sign = -sign;
            ExactRational maj = make_rational(
                10, BigInt(3) * BigInt(j) * BigInt(j) * BigInt(j) * central);
            if (maj <= target)
                return outward_round({s - maj, s + maj}, k + 2);
        }
    }

    // partial P_N/G_N with tail <= 1/(G_N (g_{N+1} - 1)); endpoints stay exact
    static DyadicInterval cantor_box(const CantorSeq& seq, unsigned long k) {
        BigInt p = 0, g_accum = 1;
        BigInt g_prev = 0;
        ExactRational target = make_rational(1, pow2(k));
        for (unsigned long n = 1;; ++n) {
            BigInt gn = detail::checked_g(seq, n, g_prev);
            g_prev = gn;
            p = p * gn + detail::checked_z(seq, n);
            g_accum *= gn;
            BigInt g_next = detail::checked_g(seq, n + 1, g_prev);
            ExactRational tail = make_rational(1, g_accum * (g_next - 1));
            if (tail <= target) {
                ExactRational s = make_rational(p, g_accum);
                return {s, s + tail};
            }
        }
    }

    std::shared_ptr<Desc> desc_;
    std::shared_ptr<Cache> cache_;
};

// (floor(x), x - floor(x)); for irrational x the floor is certified by refinement
inline std::pair<BigInt, RealOracle> floor_fract(const RealOracle& x) {
    if (x.is_rational()) {
        BigInt m = floor_of(x.rational_value());
        return {m, RealOracle::rational(x.rational_value() - ExactRational(m))};
    }
    bool irrational = x.certified_irrational();
    for (unsigned long k = 8;; k *= 2) {
        unsigned long kk = std::min(k, limits().max_precision_bits);
        DyadicInterval e = x.enclosure(kk);
        BigInt fl = floor_of(e.lo), fh = floor_of(e.hi);
        bool decided = fl == fh;
        // an irrational value cannot sit on the integer upper endpoint
        if (!decided && irrational && is_integer(e.hi) && fh == fl + 1) decided = true;
        if (decided)
            return {fl, RealOracle::affine(x, 1, ExactRational(BigInt(-fl)))};
        if (kk == limits().max_precision_bits)
            throw PrecisionExhausted("floor_fract: undecidable at max precision");
    }
}

} // namespace diophant
