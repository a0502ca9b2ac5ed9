#include "twinsmooth/lehmer.hpp"

#include <algorithm>
#include <map>

#include "twinsmooth/error.hpp"
#include "twinsmooth/poly.hpp"

namespace twinsmooth {

namespace {

bool is_odd(const mpz_class& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

void require(bool ok, const char* what) {
    if (!ok) throw Error(Errc::invalid_triple, what);
}

}  // namespace

TwinPair pair_from_triple(const CoefficientTriple& t, const SmoothnessBound& bound) {
    require(t.delta >= 1 && t.delta != 2, "delta must be positive and different from 2");
    require(t.x >= 1 && t.y >= 1, "x and y must be positive");
    require(t.x * t.x - 2 * t.delta * t.y * t.y == 1, "x^2 - 2 delta y^2 != 1");
    require(is_odd(t.x) && !is_odd(t.y), "x must be odd and y even");

    const Factorization df = factor_with_bound(t.delta, bound);
    require(df.complete(), "delta is not B-smooth");
    require(std::all_of(df.factors.begin(), df.factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; }),
            "delta is not squarefree");
    require(is_b_smooth(t.y, bound), "y is not B-smooth");

    TwinPair pair;
    pair.m = (t.x - 1) / 2;
    pair.B = bound.B;
    pair.m_factors = factor_with_bound(pair.m, bound);
    pair.m1_factors = factor_with_bound(pair.m + 1, bound);
    return pair;
}

CoefficientTriple triple_from_pair(const mpz_class& m, const SmoothnessBound& bound) {
    if (m < 1) throw Error(Errc::not_in_twin_set, "m must be positive");
    const Factorization fm = factor_with_bound(m, bound);
    const Factorization fm1 = factor_with_bound(m + 1, bound);
    if (!fm.complete() || !fm1.complete()) throw Error(Errc::not_in_twin_set, "m(m+1) is not B-smooth");

    // m and m+1 are coprime, so the exponents of 2m(m+1) are a disjoint merge plus one extra 2.
    std::map<std::uint64_t, unsigned> exps{{2, 1}};
    for (const auto* f : {&fm, &fm1})
        for (const auto& [p, e] : f->factors) exps[p] += e;

    CoefficientTriple t;
    t.delta = 1;
    t.y = 1;
    mpz_class pk;
    for (const auto& [p, e] : exps) {
        if (e % 2 == 1) t.delta *= static_cast<unsigned long>(p);
        mpz_ui_pow_ui(pk.get_mpz_t(), p, e / 2);
        t.y *= pk;
    }
    t.x = 2 * m + 1;
    auto located = locate_solution(2 * t.delta, t.x);
    if (!located) throw std::logic_error("twin pair does not lie on its Pell equation");
    t.n = located->n;
    return t;
}

QPrimeEnumerator::QPrimeEnumerator(const SmoothnessBound& bound, std::optional<mpz_class> delta_max, mpz_class lo)
    : primes_(bound.primes), max_(std::move(delta_max)), lo_(std::move(lo)) {
    if (!primes_.empty()) push(primes_[0], 0);
}

void QPrimeEnumerator::push(mpz_class value, std::size_t last) {
    if (max_ && value > *max_) return;
    heap_.push(Node{std::move(value), last});
}

// Each non-empty subset S with largest index i has two successors, S + {i+1} and
// S - {i} + {i+1}; both are larger than S, so popping the heap yields the products
// in ascending order and every subset is reached exactly once.
std::optional<mpz_class> QPrimeEnumerator::next_raw() {
    if (!emitted_one_) {
        emitted_one_ = true;
        if (!max_ || *max_ >= 1) return mpz_class(1);
    }
    if (heap_.empty()) return std::nullopt;
    Node top = heap_.top();
    heap_.pop();
    const std::size_t nxt = top.last + 1;
    if (nxt < primes_.size()) {
        push(top.value * primes_[nxt], nxt);
        push(top.value / primes_[top.last] * primes_[nxt], nxt);
    }
    return std::move(top.value);
}

std::optional<mpz_class> QPrimeEnumerator::next() {
    for (;;) {
        auto v = next_raw();
        if (!v) return v;
        if (*v == 2 || *v < lo_) continue;
        return v;
    }
}

std::vector<mpz_class> enumerate_q_prime(const SmoothnessBound& bound, std::optional<mpz_class> delta_max) {
    QPrimeEnumerator e(bound, std::move(delta_max));
    std::vector<mpz_class> out;
    while (auto v = e.next()) out.push_back(std::move(*v));
    return out;
}

unsigned long lehmer_index_bound(const SmoothnessBound& bound) {
    return std::max<unsigned long>(3, (bound.largest() + 1) / 2);
}

std::optional<std::vector<CoefficientTriple>> twins_for_delta(const mpz_class& delta, const SmoothnessBound& bound,
                                                              const std::optional<mpz_class>& x_cap) {
    auto outcome = fundamental_solution(2 * delta, x_cap);
    if (std::holds_alternative<ExceedsCap>(outcome)) return std::nullopt;
    std::vector<CoefficientTriple> out;
    const auto* fund = std::get_if<PellSolution>(&outcome);
    // A non-smooth fundamental y rules out every later solution too (y_1 | y_n).
    if (fund == nullptr || !is_b_smooth(fund->y, bound)) return out;

    out.push_back({delta, fund->x, fund->y, 1});
    const mpz_class m1 = (fund->x - 1) / 2;
    const unsigned long top = lehmer_index_bound(bound);
    for (unsigned n = 2; n <= top; ++n) {
        const mpz_class un = eval(v_coeffs(n), m1);
        if (!is_b_smooth(un, bound)) continue;
        out.push_back({delta, eval(p_coeffs(n), fund->x), fund->y * un, n});
    }
    return out;
}

std::vector<mpz_class> EnumerationResult::ms() const {
    std::vector<mpz_class> out;
    out.reserve(triples.size());
    for (const auto& t : triples) out.push_back((t.x - 1) / 2);
    return out;
}

EnumerationResult enumerate_all_twins(const SmoothnessBound& bound, const std::optional<mpz_class>& x_cap) {
    EnumerationResult result;
    QPrimeEnumerator deltas(bound);
    while (auto delta = deltas.next()) {
        auto found = twins_for_delta(*delta, bound, x_cap);
        if (!found) {
            result.unresolved.push_back(*delta);
            continue;
        }
        for (auto& t : *found) result.triples.push_back(std::move(t));
    }
    std::sort(result.triples.begin(), result.triples.end(),
              [](const CoefficientTriple& a, const CoefficientTriple& b) { return a.x < b.x; });
    result.triples.erase(std::unique(result.triples.begin(), result.triples.end(),
                                     [](const CoefficientTriple& a, const CoefficientTriple& b) { return a.x == b.x; }),
                         result.triples.end());
    return result;
}

}  // namespace twinsmooth
