#include "twinsmooth/arith.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "twinsmooth/error.hpp"

namespace twinsmooth {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_argument: return "invalid argument";
        case Errc::invalid_bound: return "invalid bound";
        case Errc::empty_range: return "empty range";
        case Errc::coefficient_mismatch: return "coefficient mismatch";
        case Errc::invalid_index: return "invalid index";
        case Errc::invalid_triple: return "invalid triple";
        case Errc::not_in_twin_set: return "not a twin smooth pair";
        case Errc::invalid_seed: return "invalid seed";
        case Errc::invalid_config: return "invalid configuration";
    }
    return "error";
}

mpz_class Factorization::value() const {
    mpz_class v = cofactor;
    mpz_class pk;
    for (const auto& [p, e] : factors) {
        mpz_ui_pow_ui(pk.get_mpz_t(), p, e);
        v *= pk;
    }
    return v;
}

SmoothnessBound primes_up_to(std::uint64_t B) {
    if (B < 2) throw Error(Errc::invalid_bound, "B must be at least 2");
    if (B > std::numeric_limits<std::uint32_t>::max())
        throw Error(Errc::invalid_bound, "B must fit in 32 bits");

    std::vector<bool> composite(B + 1, false);
    SmoothnessBound bound;
    bound.B = B;
    for (std::uint64_t i = 2; i <= B; ++i) {
        if (composite[i]) continue;
        bound.primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= B; j += i) composite[j] = true;
    }
    return bound;
}

Factorization factor_with_bound(const mpz_class& n, const SmoothnessBound& bound) {
    if (n < 1) throw Error(Errc::invalid_bound, "factor_with_bound expects n >= 1");

    Factorization f;
    f.cofactor = n;
    mpz_ptr c = f.cofactor.get_mpz_t();
    for (std::uint32_t p : bound.primes) {
        if (f.cofactor == 1) break;
        if (!mpz_divisible_ui_p(c, p)) continue;
        unsigned e = 0;
        do {
            mpz_divexact_ui(c, c, p);
            ++e;
        } while (mpz_divisible_ui_p(c, p));
        f.factors.push_back({p, e});
    }
    return f;
}

bool is_b_smooth(const mpz_class& n, const SmoothnessBound& bound) {
    if (n < 1) throw Error(Errc::invalid_bound, "is_b_smooth expects n >= 1");
    mpz_class c = n;
    mpz_ptr cp = c.get_mpz_t();
    // Powers of two come off in one shift.
    mpz_tdiv_q_2exp(cp, cp, mpz_scan1(cp, 0));
    for (std::uint32_t p : bound.primes) {
        if (mpz_cmp_ui(cp, 1) == 0) return true;
        while (mpz_divisible_ui_p(cp, p)) mpz_divexact_ui(cp, cp, p);
    }
    return mpz_cmp_ui(cp, 1) == 0;
}

mpz_class squarefree_part(const Factorization& f) {
    mpz_class d = 1;
    for (const auto& [p, e] : f.factors)
        if (e % 2 == 1) d *= static_cast<unsigned long>(p);
    return d;
}

std::size_t bit_length(const mpz_class& n) {
    return sgn(n) == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::vector<std::uint64_t> sieve_twin_smooth(std::uint64_t lo, std::uint64_t hi,
                                             const SmoothnessBound& bound, std::size_t segment) {
    if (lo < 1) throw Error(Errc::empty_range, "lo must be positive");
    if (lo > hi) throw Error(Errc::empty_range, "lo > hi");
    if (hi >= (std::uint64_t{1} << 63)) throw Error(Errc::empty_range, "hi must be below 2^63");
    segment = std::max<std::size_t>(segment, 2);

    std::vector<std::uint64_t> out;
    // smooth[i] accumulates the B-smooth part of start+i; the value is smooth
    // exactly when the accumulated part reaches the value itself.
    std::vector<std::uint64_t> smooth;
    for (std::uint64_t start = lo;; start += segment) {
        const std::uint64_t last = std::min<std::uint64_t>(hi, start + segment - 1);
        const std::uint64_t stop = last + 1;  // m+1 for the final m
        const std::size_t len = static_cast<std::size_t>(stop - start + 1);
        smooth.assign(len, 1);
        for (std::uint32_t p : bound.primes) {
            if (p > stop) break;
            for (std::uint64_t pk = p;; pk *= p) {
                std::uint64_t first = (start + pk - 1) / pk * pk;
                for (std::uint64_t v = first; v <= stop; v += pk) smooth[v - start] *= p;
                if (pk > stop / p) break;
            }
        }
        bool prev = smooth[0] == start;
        for (std::size_t i = 1; i < len; ++i) {
            const bool cur = smooth[i] == start + i;
            if (prev && cur) out.push_back(start + i - 1);
            prev = cur;
        }
        if (last == hi) break;
    }
    return out;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool strong_probable_prime(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned long s,
                           const mpz_class& n_minus_1) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
constexpr unsigned kRounds = 64;

}  // namespace

bool is_probable_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Bases 2..37 are a deterministic witness set for all n < 3.18e23.
    return std::all_of(kWitnesses.begin(), kWitnesses.end(),
                       [&](std::uint64_t a) { return strong_probable_prime(n, a, d, s); });
}

bool is_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t())) return is_probable_prime(std::uint64_t{mpz_get_ui(n.get_mpz_t())});
    for (std::uint64_t p : kWitnesses)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;

    const mpz_class n_minus_1 = n - 1;
    mpz_class d = n_minus_1;
    const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    // Fixed seed keeps the flag reproducible run to run.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x7457696e);
    const mpz_class span = n - 3;  // bases drawn from [2, n-2]
    for (unsigned round = 0; round < kRounds; ++round) {
        mpz_class a = rng.get_z_range(span) + 2;
        if (!strong_probable_prime(n, a, d, s, n_minus_1)) return false;
    }
    return true;
}

}  // namespace twinsmooth
