#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace twinsmooth {

/// All primes up to a smoothness bound B, ascending.
struct SmoothnessBound {
    std::uint64_t B = 2;
    std::vector<std::uint32_t> primes;

    std::size_t count() const { return primes.size(); }
    /// Largest prime not exceeding B.
    std::uint32_t largest() const { return primes.back(); }
};

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Partial factorization: prime powers up to some bound plus an unfactored cofactor.
struct Factorization {
    std::vector<PrimePower> factors;  // ascending by prime
    mpz_class cofactor = 1;

    bool complete() const { return cofactor == 1; }
    mpz_class value() const;
    /// Largest prime among `factors` (1 for an empty factorization).
    std::uint64_t largest_prime() const { return factors.empty() ? 1 : factors.back().prime; }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline constexpr std::size_t kDefaultSieveSegment = std::size_t{1} << 20;

SmoothnessBound primes_up_to(std::uint64_t B);

Factorization factor_with_bound(const mpz_class& n, const SmoothnessBound& bound);

bool is_b_smooth(const mpz_class& n, const SmoothnessBound& bound);

/// Every m in [lo, hi] with both m and m+1 B-smooth. Requires hi < 2^63.
std::vector<std::uint64_t> sieve_twin_smooth(std::uint64_t lo, std::uint64_t hi,
                                             const SmoothnessBound& bound,
                                             std::size_t segment = kDefaultSieveSegment);

/// Deterministic below 2^64; 64 Miller-Rabin rounds with pseudo-random bases above.
bool is_probable_prime(const mpz_class& n);
bool is_probable_prime(std::uint64_t n);

/// Product of the primes that occur to an odd power.
mpz_class squarefree_part(const Factorization& f);

std::size_t bit_length(const mpz_class& n);

}  // namespace twinsmooth
