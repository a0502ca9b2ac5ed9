#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "twinsmooth/arith.hpp"
#include "twinsmooth/lehmer.hpp"

namespace twinsmooth {

enum class Strategy { HighOrder, SmallCoefficient, SmallPrimes, Lift, Chm, Enumeration, Sieve };

const char* to_string(Strategy s) noexcept;
std::optional<Strategy> strategy_from_string(std::string_view s) noexcept;

struct SearchConfig {
    SmoothnessBound bound = primes_up_to(2);
    unsigned b_min = 240;  // records with m < 2^b_min are flagged under-range
    unsigned b_max = 256;  // nothing above 2^b_max is emitted
    unsigned s = 6;        // smallest solution index for the high-order search
    std::optional<mpz_class> x_cap_override;
    std::optional<mpz_class> delta_max;  // smallest-coefficient search
    unsigned k = 4;                      // prime count for the small-primes search
    mpz_class delta_lo = 1;
    mpz_class delta_hi = 0;
    unsigned n_lift_max = 12;
    bool powers_of_two_only = false;

    /// 2^(b_max+1) + 1 unless overridden; bounds x = 2m + 1.
    mpz_class x_cap() const;
    mpz_class m_max() const;
    void validate() const;
};

struct TwinRecord {
    mpz_class m;
    std::size_t bits = 0;
    std::uint64_t smoothness = 1;  // largest prime factor of m(m+1)
    mpz_class delta;
    mpz_class x;
    mpz_class y;
    unsigned long n = 1;
    Strategy strategy = Strategy::SmallCoefficient;
    bool sum_prime = false;
    bool under_range = false;
    Factorization m_factors;
    Factorization m1_factors;

    CoefficientTriple triple() const { return {delta, x, y, n}; }
};

using RecordSink = std::function<void(TwinRecord)>;

TwinRecord make_record(const CoefficientTriple& t, const SmoothnessBound& bound, Strategy strategy, unsigned b_min);

/// Record for a known twin m; the provenance triple is recovered through the bijection.
TwinRecord make_record(const mpz_class& m, const SmoothnessBound& bound, Strategy strategy, unsigned b_min);

/// Drops repeated m (first writer wins) and counts the repeats.
class RecordCollector {
public:
    explicit RecordCollector(RecordSink downstream) : downstream_(std::move(downstream)) {}

    void operator()(TwinRecord rec);
    void mark_seen(const mpz_class& m) { seen_.insert(m); }
    std::size_t emitted() const { return emitted_; }
    std::size_t duplicates() const { return duplicates_; }

private:
    RecordSink downstream_;
    std::set<mpz_class> seen_;
    std::size_t emitted_ = 0;
    std::size_t duplicates_ = 0;
};

// ---- work-item level building blocks (used by the batch driver) ----

/// Solve x^2 - 2 delta y^2 = 1 under the cap; emit the fundamental pair when y_1 is
/// B-smooth, followed by its lifts.
std::vector<TwinRecord> solve_delta(const SearchConfig& cfg, const mpz_class& delta, Strategy strategy);

/// n-th solutions of a fundamental record whose y stays B-smooth.
std::vector<TwinRecord> lift_solutions(const TwinRecord& fundamental, const SearchConfig& cfg);

struct HighOrderPass {
    unsigned n;
    unsigned m1_bits;        // T: w ranges over [1, 2^T)
    std::uint64_t w_max;     // 2^T - 1
};

/// The passes n = s .. floor((B+1)/2) that still admit candidates.
std::vector<HighOrderPass> high_order_passes(const SearchConfig& cfg);

/// Candidates w in [w_lo, w_hi] for one index n.
std::vector<TwinRecord> high_order_window(const SearchConfig& cfg, unsigned n, std::uint64_t w_lo, std::uint64_t w_hi);

/// Products of exactly k distinct primes <= B in [lo, hi], depth-first in
/// lexicographic order of prime indices with partial-product pruning.
class KPrimeProducts {
public:
    KPrimeProducts(const SmoothnessBound& bound, unsigned k, mpz_class lo, mpz_class hi);
    std::optional<mpz_class> next();

private:
    bool fill(std::size_t pos, std::size_t first);
    bool advance();

    std::vector<std::uint32_t> primes_;
    unsigned k_;
    mpz_class lo_, hi_;
    std::vector<std::size_t> idx_;
    std::vector<mpz_class> prefix_;
    bool started_ = false;
    bool done_ = false;
};

// ---- strategies ----

void high_order_search(const SearchConfig& cfg, const RecordSink& sink);
void smallest_coefficient_search(const SearchConfig& cfg, const RecordSink& sink);
void small_primes_search(const SearchConfig& cfg, const RecordSink& sink);

/// One combination round: every integral mu = m(M+1)/(M-m) over pairs m < M that is not already in S.
std::set<mpz_class> chm_round(const std::set<mpz_class>& S);

std::set<mpz_class> chm_expand(const std::set<mpz_class>& seeds, const SmoothnessBound& bound, unsigned max_rounds);

}  // namespace twinsmooth
