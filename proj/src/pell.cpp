#include "twinsmooth/pell.hpp"

#include <cstdint>
#include <utility>

#include "twinsmooth/error.hpp"

namespace twinsmooth {

namespace {

mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

void check_coefficient(const mpz_class& D) {
    if (D < 1) throw Error(Errc::invalid_argument, "Pell coefficient must be positive");
}

inline void addmul(mpz_class& acc, const mpz_class& v, std::uint64_t a) {
    mpz_addmul_ui(acc.get_mpz_t(), v.get_mpz_t(), a);
}

inline void addmul(mpz_class& acc, const mpz_class& v, const mpz_class& a) {
    mpz_addmul(acc.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t());
}

// The CF recurrences run in Int (machine words when D is small enough);
// only the convergents need arbitrary precision. With the convergent
// A_i/B_i built from quotients a_0..a_i, A_i^2 - D B_i^2 = (-1)^(i+1) Q_(i+1),
// so a solution is detected by Q_(i+1) == 1 at odd i without squaring.
template <typename Int>
PellOutcome solve_cf(const mpz_class& D, const Int& d, const Int& root, const std::optional<mpz_class>& cap) {
    mpz_class A = root;
    mpz_class A_prev = 1;
    mpz_class B = 1;
    mpz_class B_prev = 0;
    Int P = root;
    Int Q = d - root * root;
    for (std::size_t i = 0;; ++i) {
        if (cap && A > *cap) return ExceedsCap{D, i + 1};
        if (Q == 1 && i % 2 == 1) {
            PellSolution sol{D, std::move(A), std::move(B), 1};
            if (!sol.satisfies_identity()) throw std::logic_error("continued fraction produced a non-solution");
            return sol;
        }
        const Int a = (root + P) / Q;
        addmul(A_prev, A, a);
        std::swap(A, A_prev);
        addmul(B_prev, B, a);
        std::swap(B, B_prev);
        P = a * Q - P;
        Q = (d - P * P) / Q;
    }
}

}  // namespace

SqrtContinuedFraction::SqrtContinuedFraction(const mpz_class& D) : D_(D) {
    check_coefficient(D);
    if (mpz_perfect_square_p(D.get_mpz_t())) throw Error(Errc::invalid_argument, "D must not be a perfect square");
    root_ = isqrt(D);
    state_.a = root_;
}

void SqrtContinuedFraction::advance() {
    state_.P = state_.a * state_.Q - state_.P;
    state_.Q = (D_ - state_.P * state_.P) / state_.Q;
    state_.a = (root_ + state_.P) / state_.Q;
    ++state_.k;
}

ConvergentStream::ConvergentStream(const mpz_class& D) : cf_(D) {
    conv_.A = cf_.current().a;
    conv_.B = 1;
}

void ConvergentStream::advance() {
    cf_.advance();
    const mpz_class& a = cf_.current().a;
    A_prev_ += a * conv_.A;
    std::swap(A_prev_, conv_.A);
    B_prev_ += a * conv_.B;
    std::swap(B_prev_, conv_.B);
    ++conv_.index;
}

PellOutcome fundamental_solution(const mpz_class& D, const std::optional<mpz_class>& x_cap) {
    check_coefficient(D);
    if (mpz_perfect_square_p(D.get_mpz_t())) return NotApplicable{D};

    if (mpz_sizeinbase(D.get_mpz_t(), 2) <= 62) {
        const std::uint64_t d = mpz_get_ui(D.get_mpz_t());
        const std::uint64_t root = mpz_get_ui(isqrt(D).get_mpz_t());
        return solve_cf<std::uint64_t>(D, d, root, x_cap);
    }
    return solve_cf<mpz_class>(D, D, isqrt(D), x_cap);
}

PellSolution next_solution(const PellSolution& fund, const PellSolution& cur) {
    if (fund.D != cur.D) throw Error(Errc::coefficient_mismatch, "solutions belong to different equations");
    if (fund.n != 1) throw Error(Errc::invalid_index, "first argument must be the fundamental solution");
    return {cur.D, cur.x * fund.x + cur.D * cur.y * fund.y, cur.x * fund.y + cur.y * fund.x, cur.n + 1};
}

PellSolution nth_solution(const PellSolution& fund, unsigned long n) {
    if (n == 0) throw Error(Errc::invalid_index, "solution index must be at least 1");
    if (fund.n != 1) throw Error(Errc::invalid_index, "argument must be the fundamental solution");

    PellSolution cur = fund;
    int bit = 63 - __builtin_clzl(n);
    for (--bit; bit >= 0; --bit) {
        // x_{2k} = 2 x_k^2 - 1, y_{2k} = 2 x_k y_k
        cur.y = 2 * cur.x * cur.y;
        cur.x = 2 * cur.x * cur.x - 1;
        cur.n *= 2;
        if ((n >> bit) & 1) cur = next_solution(fund, cur);
    }
    return cur;
}

std::optional<PellSolution> locate_solution(const mpz_class& D, const mpz_class& x) {
    check_coefficient(D);
    if (x < 2) return std::nullopt;
    const mpz_class lhs = x * x - 1;
    if (!mpz_divisible_p(lhs.get_mpz_t(), D.get_mpz_t())) return std::nullopt;
    const mpz_class y2 = lhs / D;
    if (!mpz_perfect_square_p(y2.get_mpz_t())) return std::nullopt;

    auto outcome = fundamental_solution(D, x);
    auto* fund = std::get_if<PellSolution>(&outcome);
    if (fund == nullptr) return std::nullopt;
    PellSolution cur = *fund;
    while (cur.x < x) cur = next_solution(*fund, cur);
    if (cur.x != x) return std::nullopt;
    return cur;
}

}  // namespace twinsmooth
