#include "twinsmooth/cli/verify.hpp"

#include <algorithm>

#include "twinsmooth/error.hpp"
#include "twinsmooth/pell.hpp"

namespace twinsmooth::cli {

namespace {

bool same_factors(const Factorization& a, const Factorization& b) {
    if (a.factors.size() != b.factors.size() || a.cofactor != b.cofactor) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        if (a.factors[i].prime != b.factors[i].prime || a.factors[i].exponent != b.factors[i].exponent) return false;
    return true;
}

bool primes_are_prime(const Factorization& f) {
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const PrimePower& pp) { return pp.exponent >= 1 && is_probable_prime(pp.prime); });
}

std::string show(const Factorization& f) {
    std::string s;
    for (const auto& [p, e] : f.factors) {
        if (!s.empty()) s += '*';
        s += std::to_string(p);
        if (e > 1) s += '^' + std::to_string(e);
    }
    if (f.cofactor != 1) s += (s.empty() ? "" : "*") + std::string("[") + f.cofactor.get_str() + "]";
    return s.empty() ? "1" : s;
}

}  // namespace

bool Verdict::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

std::vector<std::string> Verdict::failed() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.ok) out.push_back(c.detail.empty() ? c.name : c.name + " (" + c.detail + ")");
    return out;
}

Verdict verify_record(const TwinRecord& rec, const std::optional<SmoothnessBound>& bound_in) {
    Verdict v;
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        v.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
    };

    if (rec.m < 1) {
        add("m_positive", false, "m = " + rec.m.get_str());
        return v;
    }

    add("m_factors", primes_are_prime(rec.m_factors) && rec.m_factors.value() == rec.m,
        show(rec.m_factors) + " != " + rec.m.get_str());
    add("m1_factors", primes_are_prime(rec.m1_factors) && rec.m1_factors.value() == rec.m + 1,
        show(rec.m1_factors) + " != " + mpz_class(rec.m + 1).get_str());

    const std::uint64_t largest = std::max(rec.m_factors.largest_prime(), rec.m1_factors.largest_prime());
    add("smoothness", largest == rec.smoothness,
        "largest printed prime " + std::to_string(largest) + ", record says " + std::to_string(rec.smoothness));

    SmoothnessBound bound;
    try {
        bound = bound_in ? *bound_in : primes_up_to(std::max<std::uint64_t>(rec.smoothness, 2));
    } catch (const Error& e) {
        add("bound", false, e.what());
        return v;
    }

    // Independent refactorization over the bound.
    const Factorization fm = factor_with_bound(rec.m, bound);
    const Factorization fm1 = factor_with_bound(rec.m + 1, bound);
    add("smooth", fm.complete() && fm1.complete(),
        "m(m+1) is not " + std::to_string(bound.B) + "-smooth");
    add("refactor", same_factors(fm, rec.m_factors) && same_factors(fm1, rec.m1_factors),
        "recomputed " + show(fm) + " | " + show(fm1));

    add("bits", bit_length(rec.m) == rec.bits,
        "m has " + std::to_string(bit_length(rec.m)) + " bits, record says " + std::to_string(rec.bits));

    const bool x_ok = rec.x == 2 * rec.m + 1;
    add("x", x_ok, "x != 2m+1");
    add("pell_identity", rec.x * rec.x - 2 * rec.delta * rec.y * rec.y == 1, "x^2 - 2 delta y^2 != 1");

    add("delta_squarefree", [&] {
        if (rec.delta < 1 || rec.delta == 2) return false;
        const Factorization fd = factor_with_bound(rec.delta, bound);
        return fd.complete() && std::all_of(fd.factors.begin(), fd.factors.end(),
                                            [](const PrimePower& pp) { return pp.exponent == 1; });
    }(), "delta " + rec.delta.get_str() + " is not a squarefree B-smooth coefficient other than 2");

    if (fm.complete() && fm1.complete()) {
        const CoefficientTriple t = triple_from_pair(rec.m, bound);
        v.triple = t;
        add("bijection", t.delta == rec.delta && t.x == rec.x && t.y == rec.y,
            "bijection gives delta=" + t.delta.get_str() + " y=" + t.y.get_str());

        // Solve with the record's x as the cap; the fundamental solution must fit under it.
        bool index_ok = false;
        std::string detail;
        auto outcome = fundamental_solution(2 * t.delta, t.x);
        if (rec.n == 0) {
            detail = "solution index 0";
        } else if (const auto* fund = std::get_if<PellSolution>(&outcome)) {
            const PellSolution nth = nth_solution(*fund, rec.n);
            index_ok = rec.n == t.n && nth.x == rec.x && nth.y == rec.y;
            detail = rec.n != t.n ? "solution index is " + std::to_string(t.n) + ", record says " + std::to_string(rec.n)
                                  : "(x, y) is not solution " + std::to_string(rec.n) + " for delta=" + t.delta.get_str();
        } else {
            detail = "fundamental solution exceeds x";
        }
        add("index", index_ok, detail);
    } else {
        add("bijection", false, "m(m+1) is not smooth");
        add("index", false, "m(m+1) is not smooth");
    }

    const bool prime = is_probable_prime(rec.x);
    add("sum_prime", prime == rec.sum_prime, std::string("2m+1 is ") + (prime ? "prime" : "composite"));
    return v;
}

}  // namespace twinsmooth::cli
