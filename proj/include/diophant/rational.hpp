#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace diophant {

using BigInt = mpz_class;
using ExactRational = mpq_class;

inline BigInt pow2(unsigned long k) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline ExactRational pow_rat(const ExactRational& base, unsigned long e) {
    ExactRational r(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
    // numerator/denominator powers of a canonical fraction stay coprime
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// floor(q), exact for any sign
inline BigInt floor_of(const ExactRational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline BigInt ceil_of(const ExactRational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline bool is_integer(const ExactRational& q) {
    return q.get_den() == 1;
}

inline ExactRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InvalidArgument("make_rational: zero denominator");
    ExactRational q(num, den);
    q.canonicalize();
    return q;
}

inline BigInt parse_integer(const std::string& s) {
    try {
        return BigInt(s);
    } catch (const std::invalid_argument&) {
        throw InvalidArgument("not an integer: '" + s + "'");
    }
}

// Accepts "p", "p/q", and decimal forms like "-3.25" or "1.5e-3".
inline ExactRational parse_rational(const std::string& s) {
    if (s.empty()) throw InvalidArgument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_integer(s.substr(0, slash));
        BigInt den = parse_integer(s.substr(slash + 1));
        return make_rational(num, den);
    }
    auto epos = s.find_first_of("eE");
    long exp10 = 0;
    std::string mant = s;
    if (epos != std::string::npos) {
        std::string es = s.substr(epos + 1);
        try {
            exp10 = std::stol(es);
        } catch (...) {
            throw InvalidArgument("bad exponent in rational literal: '" + s + "'");
        }
        mant = s.substr(0, epos);
    }
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw InvalidArgument("bad rational literal: '" + s + "'");
    }
    BigInt num = parse_integer(digits);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                  static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0) return ExactRational(num * scale);
    return make_rational(num, scale);
}

inline std::string to_string(const BigInt& z) {
    return z.get_str();
}

inline std::string to_string(const ExactRational& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Fixed-point decimal rendering, truncated toward zero; for display only.
inline std::string decimal_string(const ExactRational& q, unsigned digits = 12) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    BigInt scaled;
    mpz_tdiv_q(scaled.get_mpz_t(), BigInt(q.get_num() * scale).get_mpz_t(),
               q.get_den().get_mpz_t());
    bool neg = scaled < 0;
    std::string body = BigInt(abs(scaled)).get_str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
    return (neg ? "-" : "") + body;
}

inline unsigned long bit_length(const BigInt& z) {
    if (z == 0) return 0;
    return mpz_sizeinbase(z.get_mpz_t(), 2);
}

} // namespace diophant
