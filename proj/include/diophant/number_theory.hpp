#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace diophant {

inline std::vector<bool> prime_sieve(std::uint64_t n) {
    std::vector<bool> is_prime(n + 1, true);
    is_prime[0] = false;
    if (n >= 1) is_prime[1] = false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (is_prime[p])
            for (std::uint64_t m = p * p; m <= n; m += p) is_prime[m] = false;
    return is_prime;
}

inline std::vector<std::uint64_t> primes_upto(std::uint64_t n) {
    auto sieve = prime_sieve(n);
    std::vector<std::uint64_t> ps;
    for (std::uint64_t i = 2; i <= n; ++i)
        if (sieve[i]) ps.push_back(i);
    return ps;
}

inline std::uint64_t prime_count(std::uint64_t n) {
    if (n < 2) return 0;
    auto sieve = prime_sieve(n);
    std::uint64_t c = 0;
    for (std::uint64_t i = 2; i <= n; ++i) c += sieve[i];
    return c;
}

// lcm(1..n) as the product of maximal prime powers <= n
inline BigInt lcm_upto(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("lcm_upto: n must be >= 1");
    BigInt v = 1;
    for (auto p : primes_upto(n)) {
        std::uint64_t pk = p;
        while (pk <= n / p) pk *= p;
        v *= BigInt(static_cast<unsigned long>(pk));
    }
    return v;
}

// Incremental lcm(1..n): push(n) multiplies by p exactly when n is a prime power p^k.
// Smallest-prime-factor sieve makes each push O(log n) after O(limit) setup.
class LcmSequence {
  public:
    explicit LcmSequence(std::uint64_t limit) : spf_(limit + 1, 0), next_(1) {
        for (std::uint64_t i = 2; i <= limit; ++i)
            if (spf_[i] == 0)
                for (std::uint64_t m = i; m <= limit; m += i)
                    if (spf_[m] == 0) spf_[m] = i;
    }

    // value after extending to n; n must advance one step at a time
    const BigInt& push() {
        std::uint64_t n = ++next_;
        if (n >= spf_.size()) throw InvalidArgument("LcmSequence: past sieve limit");
        std::uint64_t p = spf_[n], m = n;
        while (m % p == 0) m /= p;
        if (m == 1) value_ *= BigInt(static_cast<unsigned long>(p));
        return value_;
    }

    const BigInt& value() const { return value_; }
    std::uint64_t n() const { return next_; }

  private:
    std::vector<std::uint64_t> spf_;
    std::uint64_t next_;
    BigInt value_ = 1;
};

inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw InvalidArgument("isqrt of negative");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const BigInt& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// floor(n^(1/k)) for n >= 0, k >= 1
inline BigInt nth_root_floor(const BigInt& n, unsigned long k) {
    if (n < 0 || k == 0) throw InvalidArgument("nth_root_floor: need n >= 0, k >= 1");
    BigInt r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

} // namespace diophant
