#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace twinsmooth {

enum class PolyKind { P, U, V };

/// Integer polynomial expressing the n-th Pell solution through the fundamental one:
///   x_n = p_n(x_1),   y_n / y_1 = u_n(x_1) = v_n(m_1),   v_n(m) = u_n(2m + 1).
struct SolutionPolynomial {
    PolyKind kind = PolyKind::P;
    unsigned n = 1;
    std::vector<mpz_class> coeffs;  // constant term first

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const mpz_class& leading() const { return coeffs.back(); }
    friend bool operator==(const SolutionPolynomial&, const SolutionPolynomial&) = default;
};

// Coefficient lists are computed once per n and cached for the process.
const SolutionPolynomial& p_coeffs(unsigned n);
const SolutionPolynomial& u_coeffs(unsigned n);
const SolutionPolynomial& v_coeffs(unsigned n);

mpz_class eval(const SolutionPolynomial& poly, const mpz_class& x);

/// m_n = (p_n(2 m_1 + 1) - 1) / 2.
mpz_class m_n_from_m1(const mpz_class& m1, unsigned n);

/// Largest bit size of m_1 for which m_n can stay within b bits:
/// ceil((b + 2) / n) - 2, or empty when that is below 1.
std::optional<unsigned> max_m1_bits(unsigned b, unsigned n);

}  // namespace twinsmooth
