#pragma once

// Number-theoretic primitives used throughout: deterministic primality,
// Legendre symbols, primitive roots mod 2p, orders and inverses in residue
// rings. Word-sized arithmetic where the modulus fits a machine word,
// GMP (mpz_class) for the big residue rings.
//
// Everything here is a pure function; safe to call from any thread.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qadic {

// A parameter that must be an odd prime (>= 3) was not.
class invalid_prime_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// gcd(a, m) != 1 where a unit was required.
class not_invertible_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Upper bound on p accepted by OddPrimeParam unless overridden. Keeps the
// ring modulus 4^(2p)-1 at ~4p bits, i.e. about 40 kbit at the default.
inline constexpr std::uint64_t default_max_prime = 10007;

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

// Distinct prime factors by trial division; fine for word-sized inputs.
inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> factors;
    for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            factors.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

// a reduced into [0, p), correct for negative a including INT64_MIN.
inline std::uint64_t reduce_signed(std::int64_t a, std::uint64_t p) {
    if (a >= 0) return static_cast<std::uint64_t>(a) % p;
    std::uint64_t mag = static_cast<std::uint64_t>(-(a + 1)) + 1;
    std::uint64_t r = mag % p;
    return r == 0 ? 0 : p - r;
}

}  // namespace detail

// Deterministic Miller-Rabin over the full 64-bit range. The witness set
// {2,3,...,37} has no strong pseudoprime below 3.3e24, so there is no
// probabilistic error anywhere in the supported domain.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline void require_odd_prime(std::uint64_t p, const char* who) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw invalid_prime_error(std::string(who) + ": " + std::to_string(p) +
                                  " is not an odd prime");
}

}  // namespace detail

// Legendre symbol (a|p) via Euler's criterion a^((p-1)/2) mod p.
// Returns 0 iff p | a, +1 for nonzero squares, -1 otherwise.
inline int legendre_symbol(std::int64_t a, std::uint64_t p) {
    detail::require_odd_prime(p, "legendre_symbol");
    std::uint64_t r = detail::reduce_signed(a, p);
    if (r == 0) return 0;
    std::uint64_t e = detail::pow_mod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

// Smallest g in {1,...,2p-1} generating the cyclic group Z_2p^* of order
// p-1. Candidate order is checked against the prime factors of p-1.
inline std::uint64_t primitive_root_mod_2p(std::uint64_t p) {
    detail::require_odd_prime(p, "primitive_root_mod_2p");
    const std::uint64_t m = 2 * p;
    const std::uint64_t group_order = p - 1;
    const auto factors = detail::distinct_prime_factors(group_order);
    for (std::uint64_t g = 1; g < m; ++g) {
        if (g % 2 == 0 || g % p == 0) continue;  // not a unit mod 2p
        bool primitive = true;
        for (std::uint64_t q : factors) {
            if (detail::pow_mod(g, group_order / q, m) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw std::logic_error("primitive_root_mod_2p: no generator found");
}

// Smallest k >= 1 with a^k = 1 (mod m). Walks successive powers, so the
// caller is expected to use it where the order is modest.
inline std::uint64_t multiplicative_order(const mpz_class& a, const mpz_class& m) {
    if (m < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
    if (gcd(a, m) != 1)
        throw not_invertible_error("multiplicative_order: gcd(a, m) != 1");
    mpz_class base;
    mpz_mod(base.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    mpz_class x = base;
    std::uint64_t k = 1;
    while (x != 1) {
        x = x * base;
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        ++k;
    }
    return k;
}

// b in [0, m) with a*b = 1 (mod m), by extended gcd.
inline mpz_class mod_inverse(const mpz_class& a, const mpz_class& m) {
    if (m < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw not_invertible_error("mod_inverse: gcd(a, m) != 1, no inverse");
    return inv;
}

// Inverse of the ring isomorphism Z_2p = Z_p x Z_2: maps (a mod p, b mod 2)
// to a*(p+1) + p*b mod 2p, the unique x with x = a (mod p), x = b (mod 2).
inline std::uint64_t crt_lift(std::uint64_t p, std::uint64_t a_mod_p,
                              std::uint64_t b_mod_2) {
    detail::require_odd_prime(p, "crt_lift");
    if (a_mod_p >= p)
        throw std::out_of_range("crt_lift: a_mod_p must lie in [0, p)");
    if (b_mod_2 >= 2)
        throw std::out_of_range("crt_lift: b_mod_2 must be 0 or 1");
    const std::uint64_t m = 2 * p;
    return (detail::mul_mod(a_mod_p, p + 1, m) + detail::mul_mod(p, b_mod_2, m)) % m;
}

// A validated odd prime p with its derived period N = 2p.
struct OddPrimeParam {
    std::uint64_t p;
    std::uint64_t n_period;

    explicit OddPrimeParam(std::uint64_t prime,
                           std::uint64_t max_p = default_max_prime)
        : p(prime), n_period(2 * prime) {
        detail::require_odd_prime(prime, "OddPrimeParam");
        if (prime > max_p)
            throw invalid_prime_error("OddPrimeParam: p = " + std::to_string(prime) +
                                      " exceeds the supported limit " +
                                      std::to_string(max_p));
    }
};

}  // namespace qadic
