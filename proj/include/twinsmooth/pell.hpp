#pragma once

#include <cstddef>
#include <optional>
#include <variant>

#include <gmpxx.h>

namespace twinsmooth {

/// One step of the continued fraction expansion of sqrt(D):
/// a_k = floor((P_k + sqrt(D)) / Q_k), with Q_k | D - P_k^2.
struct CFState {
    std::size_t k = 0;
    mpz_class P = 0;
    mpz_class Q = 1;
    mpz_class a = 0;
};

/// Yields the CF states of sqrt(D) for non-square D >= 2.
class SqrtContinuedFraction {
public:
    explicit SqrtContinuedFraction(const mpz_class& D);

    const CFState& current() const { return state_; }
    void advance();

private:
    mpz_class D_;
    mpz_class root_;
    CFState state_;
};

struct Convergent {
    std::size_t index = 0;
    mpz_class A;  // numerator
    mpz_class B;  // denominator
};

/// Convergents A_i/B_i of sqrt(D), built from the CF quotients.
class ConvergentStream {
public:
    explicit ConvergentStream(const mpz_class& D);

    const Convergent& current() const { return conv_; }
    /// The CF state whose quotient produced the current convergent.
    const CFState& state() const { return cf_.current(); }
    void advance();

private:
    SqrtContinuedFraction cf_;
    Convergent conv_;
    mpz_class A_prev_ = 1;
    mpz_class B_prev_ = 0;
};

/// A solution of x^2 - D y^2 = 1 with solution index n (n = 1 is fundamental).
struct PellSolution {
    mpz_class D;
    mpz_class x;
    mpz_class y;
    unsigned long n = 1;

    bool satisfies_identity() const { return x * x - D * y * y == 1; }
    friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

/// The fundamental solution has x above the cap.
struct ExceedsCap {
    mpz_class D;
    std::size_t convergents_examined = 0;
};

/// D is a perfect square; only trivial solutions exist.
struct NotApplicable {
    mpz_class D;
};

using PellOutcome = std::variant<PellSolution, ExceedsCap, NotApplicable>;

/// Smallest positive solution of x^2 - D y^2 = 1 with x <= x_cap (no cap when empty).
/// Stops as soon as a convergent numerator exceeds the cap.
PellOutcome fundamental_solution(const mpz_class& D, const std::optional<mpz_class>& x_cap = std::nullopt);

/// (x_{n+1}, y_{n+1}) = (x_n x_1 + D y_n y_1, x_n y_1 + y_n x_1).
PellSolution next_solution(const PellSolution& fund, const PellSolution& cur);

/// The n-th solution, by left-to-right binary doubling.
PellSolution nth_solution(const PellSolution& fund, unsigned long n);

/// Index n such that x is the x-coordinate of the n-th solution of x^2 - D y^2 = 1,
/// or empty when x does not solve the equation.
std::optional<PellSolution> locate_solution(const mpz_class& D, const mpz_class& x);

}  // namespace twinsmooth
