#include "twinsmooth/search.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "twinsmooth/error.hpp"
#include "twinsmooth/pell.hpp"
#include "twinsmooth/poly.hpp"

namespace twinsmooth {

namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 7> kStrategyNames{{
    {Strategy::HighOrder, "high-order"},
    {Strategy::SmallCoefficient, "small-coefficient"},
    {Strategy::SmallPrimes, "small-primes"},
    {Strategy::Lift, "lift"},
    {Strategy::Chm, "chm"},
    {Strategy::Enumeration, "enumeration"},
    {Strategy::Sieve, "sieve"},
}};

mpz_class pow2(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

bool is_power_of_two(unsigned n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

const char* to_string(Strategy s) noexcept {
    for (const auto& [tag, name] : kStrategyNames)
        if (tag == s) return name.data();
    return "unknown";
}

std::optional<Strategy> strategy_from_string(std::string_view s) noexcept {
    for (const auto& [tag, name] : kStrategyNames)
        if (name == s) return tag;
    return std::nullopt;
}

mpz_class SearchConfig::x_cap() const { return x_cap_override ? *x_cap_override : pow2(b_max + 1) + 1; }

mpz_class SearchConfig::m_max() const { return pow2(b_max); }

void SearchConfig::validate() const {
    if (b_min < 2 || b_min > b_max) throw Error(Errc::invalid_config, "need 2 <= b_min <= b_max");
    if (s < 2) throw Error(Errc::invalid_config, "minimal solution index s must be at least 2");
    if (k < 1) throw Error(Errc::invalid_config, "k must be at least 1");
    if (n_lift_max < 1) throw Error(Errc::invalid_config, "n_lift_max must be at least 1");
}

TwinRecord make_record(const CoefficientTriple& t, const SmoothnessBound& bound, Strategy strategy, unsigned b_min) {
    TwinRecord rec;
    rec.m = (t.x - 1) / 2;
    rec.bits = bit_length(rec.m);
    rec.delta = t.delta;
    rec.x = t.x;
    rec.y = t.y;
    rec.n = t.n;
    rec.strategy = strategy;
    rec.m_factors = factor_with_bound(rec.m, bound);
    rec.m1_factors = factor_with_bound(rec.m + 1, bound);
    rec.smoothness = std::max(rec.m_factors.largest_prime(), rec.m1_factors.largest_prime());
    rec.sum_prime = is_probable_prime(rec.x);
    rec.under_range = rec.m < pow2(b_min);
    return rec;
}

TwinRecord make_record(const mpz_class& m, const SmoothnessBound& bound, Strategy strategy, unsigned b_min) {
    return make_record(triple_from_pair(m, bound), bound, strategy, b_min);
}

void RecordCollector::operator()(TwinRecord rec) {
    if (!seen_.insert(rec.m).second) {
        ++duplicates_;
        return;
    }
    ++emitted_;
    downstream_(std::move(rec));
}

std::vector<TwinRecord> lift_solutions(const TwinRecord& fundamental, const SearchConfig& cfg) {
    if (fundamental.n != 1) throw Error(Errc::invalid_index, "lifting starts from a fundamental record");
    std::vector<TwinRecord> out;
    const mpz_class& m1 = fundamental.m;
    const mpz_class limit = cfg.m_max();
    mpz_class lower = m1;  // 4^(n-1) m1^n, lower bound on m_n
    for (unsigned n = 2; n <= cfg.n_lift_max; ++n) {
        lower *= 4 * m1;
        if (lower > limit) break;
        if (cfg.powers_of_two_only && !is_power_of_two(n)) continue;
        const mpz_class un = eval(v_coeffs(n), m1);
        if (!is_b_smooth(un, cfg.bound)) continue;
        const mpz_class mn = m_n_from_m1(m1, n);
        if (mn > limit) break;
        out.push_back(make_record(CoefficientTriple{fundamental.delta, 2 * mn + 1, fundamental.y * un, n}, cfg.bound,
                                  Strategy::Lift, cfg.b_min));
    }
    return out;
}

std::vector<TwinRecord> solve_delta(const SearchConfig& cfg, const mpz_class& delta, Strategy strategy) {
    std::vector<TwinRecord> out;
    auto outcome = fundamental_solution(2 * delta, cfg.x_cap());
    const auto* fund = std::get_if<PellSolution>(&outcome);
    if (fund == nullptr || !is_b_smooth(fund->y, cfg.bound)) return out;
    const mpz_class m1 = (fund->x - 1) / 2;
    if (m1 > cfg.m_max()) return out;

    out.push_back(make_record(CoefficientTriple{delta, fund->x, fund->y, 1}, cfg.bound, strategy, cfg.b_min));
    for (auto& rec : lift_solutions(out.front(), cfg)) out.push_back(std::move(rec));
    return out;
}

std::vector<HighOrderPass> high_order_passes(const SearchConfig& cfg) {
    std::vector<HighOrderPass> passes;
    const std::uint64_t n_top = (cfg.bound.B + 1) / 2;
    for (std::uint64_t n = cfg.s; n <= n_top; ++n) {
        auto bits = max_m1_bits(cfg.b_max, static_cast<unsigned>(n));
        if (!bits) break;  // T only shrinks as n grows
        if (*bits > 62) throw Error(Errc::invalid_config, "w range exceeds 2^62; raise s or lower b_max");
        passes.push_back({static_cast<unsigned>(n), *bits, (std::uint64_t{1} << *bits) - 1});
    }
    return passes;
}

std::vector<TwinRecord> high_order_window(const SearchConfig& cfg, unsigned n, std::uint64_t w_lo, std::uint64_t w_hi) {
    std::vector<TwinRecord> out;
    const mpz_class limit = cfg.m_max();
    const SolutionPolynomial& vn = v_coeffs(n);
    for (std::uint64_t w : sieve_twin_smooth(w_lo, w_hi, cfg.bound)) {
        const mpz_class wz = w;
        const mpz_class un = eval(vn, wz);
        if (!is_b_smooth(un, cfg.bound)) continue;
        const mpz_class mn = m_n_from_m1(wz, n);
        if (mn > limit) continue;
        // w need not be fundamental: if it is the j-th solution, m_n(w) is the (j*n)-th.
        const CoefficientTriple base = triple_from_pair(wz, cfg.bound);
        out.push_back(make_record(CoefficientTriple{base.delta, 2 * mn + 1, base.y * un, base.n * n}, cfg.bound,
                                  Strategy::HighOrder, cfg.b_min));
    }
    return out;
}

void high_order_search(const SearchConfig& cfg, const RecordSink& sink) {
    cfg.validate();
    for (const auto& pass : high_order_passes(cfg)) {
        for (std::uint64_t lo = 1; lo <= pass.w_max; lo += kDefaultSieveSegment) {
            const std::uint64_t hi = std::min<std::uint64_t>(pass.w_max, lo + kDefaultSieveSegment - 1);
            for (auto& rec : high_order_window(cfg, pass.n, lo, hi)) sink(std::move(rec));
        }
    }
}

void smallest_coefficient_search(const SearchConfig& cfg, const RecordSink& sink) {
    cfg.validate();
    if (!cfg.delta_max) throw Error(Errc::invalid_config, "smallest-coefficient search needs delta_max");
    QPrimeEnumerator deltas(cfg.bound, cfg.delta_max);
    while (auto delta = deltas.next())
        for (auto& rec : solve_delta(cfg, *delta, Strategy::SmallCoefficient)) sink(std::move(rec));
}

KPrimeProducts::KPrimeProducts(const SmoothnessBound& bound, unsigned k, mpz_class lo, mpz_class hi)
    : primes_(bound.primes), k_(k), lo_(std::move(lo)), hi_(std::move(hi)), idx_(k), prefix_(k + 1, 1) {
    if (k == 0) throw Error(Errc::invalid_config, "k must be at least 1");
    if (lo_ > hi_) throw Error(Errc::empty_range, "delta_lo > delta_hi");
}

// Places consecutive indices first, first+1, ... from `pos` on; fails when the
// primes run out or even this smallest completion exceeds hi.
bool KPrimeProducts::fill(std::size_t pos, std::size_t first) {
    for (std::size_t p = pos; p < k_; ++p) {
        const std::size_t j = first + (p - pos);
        if (j >= primes_.size()) return false;
        idx_[p] = j;
        prefix_[p + 1] = prefix_[p] * primes_[j];
    }
    return prefix_[k_] <= hi_;
}

bool KPrimeProducts::advance() {
    for (std::size_t pos = k_; pos-- > 0;)
        if (fill(pos, idx_[pos] + 1)) return true;
    return false;
}

std::optional<mpz_class> KPrimeProducts::next() {
    if (done_) return std::nullopt;
    bool ok = started_ ? advance() : fill(0, 0);
    started_ = true;
    while (ok && prefix_[k_] < lo_) ok = advance();
    if (!ok) {
        done_ = true;
        return std::nullopt;
    }
    return prefix_[k_];
}

void small_primes_search(const SearchConfig& cfg, const RecordSink& sink) {
    cfg.validate();
    KPrimeProducts deltas(cfg.bound, cfg.k, cfg.delta_lo, cfg.delta_hi);
    while (auto delta = deltas.next())
        for (auto& rec : solve_delta(cfg, *delta, Strategy::SmallPrimes)) sink(std::move(rec));
}

std::set<mpz_class> chm_round(const std::set<mpz_class>& S) {
    std::set<mpz_class> fresh;
    mpz_class num, den, mu;
    for (auto lo = S.begin(); lo != S.end(); ++lo) {
        for (auto hi = std::next(lo); hi != S.end(); ++hi) {
            // mu / (mu + 1) = m/(m+1) * (M+1)/M  <=>  mu = m(M+1) / (M-m)
            num = *lo * (*hi + 1);
            den = *hi - *lo;
            if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) continue;
            mpz_divexact(mu.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (!S.contains(mu)) fresh.insert(mu);
        }
    }
    return fresh;
}

std::set<mpz_class> chm_expand(const std::set<mpz_class>& seeds, const SmoothnessBound& bound, unsigned max_rounds) {
    if (max_rounds < 1) throw Error(Errc::invalid_config, "max_rounds must be at least 1");
    for (const auto& m : seeds)
        if (m < 1 || !is_b_smooth(m, bound) || !is_b_smooth(m + 1, bound))
            throw Error(Errc::invalid_seed, "seed " + m.get_str() + " is not a twin smooth integer");

    std::set<mpz_class> S = seeds;
    for (unsigned round = 0; round < max_rounds; ++round) {
        auto fresh = chm_round(S);
        if (fresh.empty()) break;
        S.merge(fresh);
    }
    return S;
}

}  // namespace twinsmooth
