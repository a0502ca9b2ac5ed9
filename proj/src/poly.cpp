#include "twinsmooth/poly.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "twinsmooth/error.hpp"

namespace twinsmooth {

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

void check_index(unsigned n) {
    if (n == 0) throw Error(Errc::invalid_index, "polynomial index must be at least 1");
}

// p_n(x) = sum_j (-1)^j [ sum_{i=j}^{floor(n/2)} C(n,2i) C(i,j) ] x^(n-2j)
SolutionPolynomial build_p(unsigned n) {
    SolutionPolynomial poly{PolyKind::P, n, std::vector<mpz_class>(n + 1, 0)};
    for (unsigned j = 0; j <= n / 2; ++j) {
        mpz_class a = 0;
        for (unsigned i = j; i <= n / 2; ++i) a += binomial(n, 2 * i) * binomial(i, j);
        poly.coeffs[n - 2 * j] = (j % 2 == 0) ? a : mpz_class(-a);
    }
    return poly;
}

// u_n(x) = sum_j (-1)^j [ sum_{i=j}^{ceil(n/2)-1} C(n,2i+1) C(i,j) ] x^(n-1-2j)
SolutionPolynomial build_u(unsigned n) {
    SolutionPolynomial poly{PolyKind::U, n, std::vector<mpz_class>(n, 0)};
    const unsigned top = (n + 1) / 2 - 1;
    for (unsigned j = 0; j <= top; ++j) {
        mpz_class a = 0;
        for (unsigned i = j; i <= top; ++i) a += binomial(n, 2 * i + 1) * binomial(i, j);
        poly.coeffs[n - 1 - 2 * j] = (j % 2 == 0) ? a : mpz_class(-a);
    }
    return poly;
}

// v_n(m) = u_n(2m + 1): expand each (2m + 1)^k binomially.
SolutionPolynomial build_v(unsigned n) {
    const SolutionPolynomial& u = u_coeffs(n);
    SolutionPolynomial poly{PolyKind::V, n, std::vector<mpz_class>(n, 0)};
    mpz_class pow2;
    for (unsigned k = 0; k < u.coeffs.size(); ++k) {
        if (u.coeffs[k] == 0) continue;
        for (unsigned r = 0; r <= k; ++r) {
            mpz_ui_pow_ui(pow2.get_mpz_t(), 2, r);
            poly.coeffs[r] += u.coeffs[k] * binomial(k, r) * pow2;
        }
    }
    return poly;
}

class PolyCache {
public:
    template <typename Build>
    const SolutionPolynomial& get(unsigned n, Build build) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(n); it != cache_.end()) return *it->second;
        }
        // Built outside the lock: build_v recurses into the u cache.
        auto poly = std::make_unique<SolutionPolynomial>(build(n));
        std::lock_guard lock(mutex_);
        auto [it, inserted] = cache_.try_emplace(n, std::move(poly));
        return *it->second;
    }

private:
    std::mutex mutex_;
    std::map<unsigned, std::unique_ptr<SolutionPolynomial>> cache_;
};

PolyCache& cache_for(PolyKind kind) {
    static PolyCache p_cache, u_cache, v_cache;
    switch (kind) {
        case PolyKind::P: return p_cache;
        case PolyKind::U: return u_cache;
        default: return v_cache;
    }
}

}  // namespace

const SolutionPolynomial& p_coeffs(unsigned n) {
    check_index(n);
    return cache_for(PolyKind::P).get(n, build_p);
}

const SolutionPolynomial& u_coeffs(unsigned n) {
    check_index(n);
    return cache_for(PolyKind::U).get(n, build_u);
}

const SolutionPolynomial& v_coeffs(unsigned n) {
    check_index(n);
    return cache_for(PolyKind::V).get(n, build_v);
}

mpz_class eval(const SolutionPolynomial& poly, const mpz_class& x) {
    mpz_class acc = 0;
    for (auto it = poly.coeffs.rbegin(); it != poly.coeffs.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

mpz_class m_n_from_m1(const mpz_class& m1, unsigned n) {
    // p_n(odd) is odd, so the halving is exact.
    mpz_class xn = eval(p_coeffs(n), 2 * m1 + 1);
    xn -= 1;
    mpz_tdiv_q_2exp(xn.get_mpz_t(), xn.get_mpz_t(), 1);
    return xn;
}

std::optional<unsigned> max_m1_bits(unsigned b, unsigned n) {
    if (b < 2) throw Error(Errc::invalid_argument, "bit bound must be at least 2");
    check_index(n);
    const long bits = static_cast<long>((b + 2 + n - 1) / n) - 2;
    if (bits < 1) return std::nullopt;
    return static_cast<unsigned>(bits);
}

}  // namespace twinsmooth
