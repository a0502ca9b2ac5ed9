#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include <gmpxx.h>

#include "twinsmooth/arith.hpp"
#include "twinsmooth/pell.hpp"

namespace twinsmooth {

/// (delta, x, y) with x^2 - 2 delta y^2 = 1, delta squarefree B-smooth and != 2,
/// x odd, y even and B-smooth; n is the solution index of (x, y).
struct CoefficientTriple {
    mpz_class delta;
    mpz_class x;
    mpz_class y;
    unsigned long n = 1;

    friend bool operator==(const CoefficientTriple&, const CoefficientTriple&) = default;
};

/// Consecutive B-smooth integers (m, m+1).
struct TwinPair {
    mpz_class m;
    std::uint64_t B = 2;
    Factorization m_factors;
    Factorization m1_factors;
};

/// m = (x - 1) / 2. Throws invalid_triple when the triple is not in P for this bound.
TwinPair pair_from_triple(const CoefficientTriple& t, const SmoothnessBound& bound);

/// Inverse map: x = 2m+1, delta = squarefree part of 2m(m+1), y = sqrt(2m(m+1)/delta).
/// Also locates the solution index n. Throws not_in_twin_set when m(m+1) is not B-smooth.
CoefficientTriple triple_from_pair(const mpz_class& m, const SmoothnessBound& bound);

/// Squarefree products of primes <= B, excluding 2, in ascending order
/// (1, the empty product, included). Values below `lo` are skipped.
class QPrimeEnumerator {
public:
    QPrimeEnumerator(const SmoothnessBound& bound, std::optional<mpz_class> delta_max = std::nullopt,
                     mpz_class lo = 1);

    std::optional<mpz_class> next();

private:
    struct Node {
        mpz_class value;
        std::size_t last;  // index of the largest prime in the product

        bool operator>(const Node& o) const { return value > o.value; }
    };

    void push(mpz_class value, std::size_t last);
    std::optional<mpz_class> next_raw();

    std::vector<std::uint32_t> primes_;
    std::optional<mpz_class> max_;
    mpz_class lo_;
    bool emitted_one_ = false;
    std::priority_queue<Node, std::vector<Node>, std::greater<>> heap_;
};

std::vector<mpz_class> enumerate_q_prime(const SmoothnessBound& bound,
                                         std::optional<mpz_class> delta_max = std::nullopt);

/// Lehmer's bound on the solution index: max{3, (q+1)/2}, q the largest prime <= B.
unsigned long lehmer_index_bound(const SmoothnessBound& bound);

/// Twin triples contributed by one coefficient: the fundamental solution (when its y is
/// B-smooth) and every n-th solution up to the index bound whose y stays B-smooth.
/// Empty optional means the fundamental solution exceeded the cap (unresolved).
std::optional<std::vector<CoefficientTriple>> twins_for_delta(const mpz_class& delta, const SmoothnessBound& bound,
                                                              const std::optional<mpz_class>& x_cap);

struct EnumerationResult {
    std::vector<CoefficientTriple> triples;  // ascending by x
    std::vector<mpz_class> unresolved;       // deltas whose fundamental x exceeded the cap

    bool complete() const { return unresolved.empty(); }
    std::vector<mpz_class> ms() const;
};

EnumerationResult enumerate_all_twins(const SmoothnessBound& bound, const std::optional<mpz_class>& x_cap = std::nullopt);

}  // namespace twinsmooth
