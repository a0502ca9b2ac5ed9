// Acceptance harness: `twinsmooth_acceptance <criterion>` prints one PASS/FAIL line
// for criterion 1..12 (or all of them with no argument) and exits non-zero on FAIL.

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "twinsmooth/cli/checkpoint.hpp"
#include "twinsmooth/cli/driver.hpp"
#include "twinsmooth/cli/records.hpp"
#include "twinsmooth/cli/verify.hpp"
#include "twinsmooth/lehmer.hpp"
#include "twinsmooth/pell.hpp"
#include "twinsmooth/poly.hpp"
#include "twinsmooth/search.hpp"

using namespace twinsmooth;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Time limits in seconds; 0 means not asserted.
constexpr double kLimit[13] = {0, 1, 10, 60, 60, 600, 10, 1, 30, 30, 10, 0, 300};

struct Outcome {
    bool ok = true;
    std::string summary;
    std::vector<std::string> notes;

    void fail(std::string why) {
        ok = false;
        notes.push_back(std::move(why));
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

std::string str(const mpz_class& v) { return v.get_str(); }

mpz_class pow_ui(unsigned long b, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

// ---- 1: printed polynomial tables ----

const char* const kPrintedP[] = {
    "x",
    "2x^2 - 1",
    "x (4x^2 - 3)",
    "8x^4 - 8x^2 + 1",
    "x (16x^4 - 20x^2 + 5)",
    "(2x^2 - 1) (16x^4 - 16x^2 + 1)",
    "x (64x^6 - 112x^4 + 56x^2 - 7)",
    "128x^8 - 256x^6 + 160x^4 - 32x^2 + 1",
    "x(4x^2 - 3)(64x^6 - 96x^4 + 36x^2 - 3)",
    "(2x^2 - 1) (256x^8 - 512x^6 + 304x^4 - 48x^2 + 1)",
    "x (1024x^{10} - 2816x^8 + 2816x^6 - 1232x^4 + 220x^2 - 11)",
    "(8x^4 - 8x^2 + 1) (256x^8 - 512x^6 + 320x^4 - 64x^2 + 1)",
};

const char* const kPrintedU[] = {
    "1",
    "2x",
    "(2x - 1)(2x + 1)",
    "4x(2x^2 - 1)",
    "(4x^2 - 2x - 1)(4x^2 + 2x - 1)",
    "2x(2x - 1)(2x + 1)(4x^2 - 3)",
    "(8x^3 - 4x^2 - 4x + 1)(8x^3 + 4x^2 - 4x - 1)",
    "8x(2x^2 - 1)(8x^4 - 8x^2 + 1)",
    "(2x - 1)(2x + 1)(8x^3 - 6x - 1)(8x^3 - 6x + 1)",
    "2x(4x^2 - 2x - 1)(4x^2 + 2x - 1)(16x^4 - 20x^2 + 5)",
    "(32x^5 - 16x^4 - 32x^3 + 12x^2 + 6x - 1)(32x^5 + 16x^4 - 32x^3 - 12x^2 + 6x + 1)",
    "4x(2x - 1)(2x + 1)(2x^2 - 1)(4x^2 - 3)(16x^4 - 16x^2 + 1)",
};

const char* const kPrintedV[] = {
    "1",
    "2(2m + 1)",
    "(4m + 1)(4m + 3)",
    "4(2m + 1)(8m^2 + 8m + 1)",
    "(16m^2 + 12m + 1)(16m^2 + 20m + 5)",
    "2(2m + 1)(4m + 1)(4m + 3)(16m^2 + 16m + 1)",
    "(64m^3 + 80m^2 + 24m + 1)(64m^3 + 112m^2 + 56m + 7)",
    "8(2m + 1)(8m^2 + 8m + 1)(128m^4 + 256m^3 + 160m^2 + 32m + 1)",
    "(4m + 1)(4m + 3)(64m^3 + 96m^2 + 36m + 1)(64m^3 + 96m^2 + 36m + 3)",
    "2(2m + 1)(16m^2 + 12m + 1)(16m^2 + 20m + 5)(256m^4 + 512m^3 + 304m^2 + 48m + 1)",
    "(1024m^5 + 2304m^4 + 1792m^3 + 560m^2 + 60m + 1)"
    "(1024m^5 + 2816m^4 + 2816m^3 + 1232m^2 + 220m + 11)",
    "4(2m + 1)(4m + 1)(4m + 3)(8m^2 + 8m + 1)(16m^2 + 16m + 1)"
    "(256m^4 + 512m^3 + 320m^2 + 64m + 1)",
};

Outcome polynomial_tables() {
    Outcome o;
    int compared = 0;
    for (unsigned n = 1; n <= 12; ++n) {
        const std::pair<const char*, const SolutionPolynomial*> rows[] = {
            {kPrintedP[n - 1], &p_coeffs(n)}, {kPrintedU[n - 1], &u_coeffs(n)}, {kPrintedV[n - 1], &v_coeffs(n)}};
        for (const auto& [printed, poly] : rows) {
            ++compared;
            o.expect(oracle::parse_poly(printed) == poly->coeffs, "n=" + std::to_string(n) + " differs from " + printed);
        }
    }
    o.summary = std::to_string(compared) + " polynomials compared coefficient by coefficient";
    return o;
}

// ---- 2: structural identities ----

oracle::Poly compose(const std::vector<mpz_class>& p, const std::vector<mpz_class>& q) {
    oracle::Poly acc{0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = oracle::mul(acc, q);
        acc[0] += *it;
    }
    return oracle::trim(acc);
}

Outcome identity_suite() {
    Outcome o;
    constexpr unsigned kMax = 48;
    int identities = 0;
    for (unsigned k = 1; k <= kMax; ++k)
        for (unsigned m = 1; k * m <= kMax; ++m) {
            const unsigned n = k * m;
            const auto& pk = p_coeffs(k).coeffs;
            o.expect(compose(p_coeffs(m).coeffs, pk) == p_coeffs(n).coeffs,
                     "p_" + std::to_string(n) + " != p_" + std::to_string(m) + " o p_" + std::to_string(k));
            o.expect(oracle::mul(u_coeffs(k).coeffs, compose(u_coeffs(m).coeffs, pk)) == u_coeffs(n).coeffs,
                     "u_" + std::to_string(n) + " != u_" + std::to_string(k) + " * u_" + std::to_string(m) + " o p_" +
                         std::to_string(k));
            identities += 2;
        }
    for (unsigned n = 1; n <= kMax; ++n) {
        o.expect(p_coeffs(n).leading() == pow_ui(2, n - 1), "leading coefficient of p_" + std::to_string(n));
        o.expect(u_coeffs(n).leading() == pow_ui(2, n - 1), "leading coefficient of u_" + std::to_string(n));
        o.expect(v_coeffs(n).leading() == pow_ui(4, n - 1), "leading coefficient of v_" + std::to_string(n));
        if (n % 2 == 1) o.expect(p_coeffs(n).coeffs[0] == 0, "x does not divide p_" + std::to_string(n));
    }
    // q(x) = 2 p_n(x/2) for n = 2^k: integral, monic, even below the top, constant 2
    // (-2 for n = 2, where p_2 has constant term -1).
    for (unsigned k = 1; k <= 6; ++k) {
        const unsigned n = 1u << k;
        const auto& a = p_coeffs(n).coeffs;
        std::vector<mpz_class> q(a.size());
        bool integral = true;
        for (unsigned i = 0; i < a.size(); ++i) {
            const mpz_class num = 2 * a[i];
            const mpz_class den = pow_ui(2, i);
            if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) integral = false;
            q[i] = num / den;
        }
        const std::string tag = "Eisenstein form for n=" + std::to_string(n);
        o.expect(integral, tag + ": non-integral coefficient");
        o.expect(q.back() == 1, tag + ": not monic");
        for (unsigned i = 0; i + 1 < q.size(); ++i) o.expect(mpz_even_p(q[i].get_mpz_t()), tag + ": odd coefficient");
        o.expect(q[0] == (k == 1 ? -2 : 2), tag + ": constant term " + str(q[0]));
        o.expect(!mpz_divisible_ui_p(q[0].get_mpz_t(), 4), tag + ": constant divisible by 4");
    }
    o.summary = std::to_string(identities) + " composition/factorization identities to n=48, Eisenstein form to n=64";
    return o;
}

// ---- 3: Pell solver against brute force ----

Outcome pell_oracle() {
    Outcome o;
    constexpr std::uint64_t kBruteY = 200000;
    const mpz_class cap18("1000000000000000000");
    int brute = 0, chakravala = 0;
    for (std::uint64_t D = 2; D <= 1000; ++D) {
        const mpz_class Dz(std::to_string(D));
        if (mpz_perfect_square_p(Dz.get_mpz_t())) continue;
        const auto out = fundamental_solution(Dz);
        const auto* s = std::get_if<PellSolution>(&out);
        if (s == nullptr) {
            o.fail("D=" + std::to_string(D) + ": no solution");
            continue;
        }
        mpz_class bx, by;
        if (auto b = oracle::brute_pell(D, D == 61 ? 300000000 : kBruteY)) {
            bx = mpz_class(std::to_string(b->first));
            by = mpz_class(std::to_string(b->second));
            ++brute;
        } else {
            // y beyond the brute-force budget: the expansion must agree with the
            // chakravala method instead
            std::tie(bx, by) = oracle::chakravala(Dz);
            o.expect(by > kBruteY, "D=" + std::to_string(D) + ": brute force missed y=" + str(by));
            ++chakravala;
        }
        o.expect(s->x == bx && s->y == by, "D=" + std::to_string(D) + ": got (" + str(s->x) + ", " + str(s->y) +
                                               ") expected (" + str(bx) + ", " + str(by) + ")");
        const auto capped = fundamental_solution(Dz, cap18);
        if (bx <= cap18) {
            const auto* c = std::get_if<PellSolution>(&capped);
            o.expect(c != nullptr && c->x == bx, "D=" + std::to_string(D) + ": capped solve disagrees");
        } else {
            o.expect(std::holds_alternative<ExceedsCap>(capped), "D=" + std::to_string(D) + ": cap not enforced");
        }
    }
    const auto s61 = fundamental_solution(61);
    const auto* f61 = std::get_if<PellSolution>(&s61);
    o.expect(f61 && f61->x == 1766319049 && f61->y == 226153980, "D=61 is not (1766319049, 226153980)");
    o.summary = std::to_string(brute) + " D by brute force, " + std::to_string(chakravala) +
                " by chakravala beyond y=" + std::to_string(kBruteY) + ", caps 1e18 and none";
    return o;
}

// ---- 4: bijection round trip ----

Outcome bijection() {
    Outcome o;
    const auto bound = primes_up_to(113);
    const auto ms = sieve_twin_smooth(1, 1000000, bound);
    for (std::uint64_t m : ms) {
        const mpz_class mz(std::to_string(m));
        const auto t = triple_from_pair(mz, bound);
        const auto pair = pair_from_triple(t, bound);
        o.expect(pair.m == mz, "m=" + std::to_string(m) + " does not round-trip");
        o.expect(triple_from_pair(pair.m, bound) == t, "triple for m=" + std::to_string(m) + " does not round-trip");
        o.expect(mpz_odd_p(t.x.get_mpz_t()) && mpz_even_p(t.y.get_mpz_t()), "parity fails for m=" + std::to_string(m));
        o.expect(oracle::smooth(mz * (mz + 1), 113), "sieve returned non-smooth m=" + std::to_string(m));
    }
    o.summary = std::to_string(ms.size()) + " pairs with m <= 10^6, B=113";
    return o;
}

// ---- 5: complete enumeration ----

Outcome enumeration() {
    Outcome o;
    std::ostringstream summary;
    const mpz_class oracle_top(100000000);
    for (int B : {3, 5, 7, 13}) {
        const auto fixture = oracle::load_fixture(TWINSMOOTH_FIXTURE_DIR "/twins_b" + std::to_string(B) + ".txt");
        const auto result = enumerate_all_twins(primes_up_to(B));
        o.expect(result.complete(), "B=" + std::to_string(B) + ": unresolved coefficients");
        std::vector<mpz_class> expect;
        for (auto m : fixture) expect.emplace_back(std::to_string(m));
        const auto got = result.ms();
        o.expect(got == expect, "B=" + std::to_string(B) + ": enumeration differs from the sieve oracle");
        // A complete enumeration bounded by the index limit leaves nothing past the oracle range.
        o.expect(got.empty() || got.back() <= oracle_top, "B=" + std::to_string(B) + ": pair beyond 10^8");
        summary << "B=" << B << ":" << got.size() << " ";
    }
    o.summary = summary.str() + "(all coefficients resolved)";
    return o;
}

// ---- 6: published pairs ----

struct Published {
    const char* label;
    const char* m;
    const char* m_factors;
    const char* m1_factors;
    unsigned bits;
    std::uint64_t smoothness;
    unsigned long n;        // stated solution index
    const char* delta;      // stated coefficient, when given
};

const Published kPublished[] = {
    {"245-bit", "44746808406030847930450201970587971020922341276429366152081686798603000000",
     "2^6*3^4*5^6*7^5*11^2*13^2*41*43^2*53*97*241^2*337*509*673*4703^2*5981*9413^2*13669^2*16759^2",
     "31^2*157^4*181^2*251^2*349^2*359^2*457^2*1427^2*2617^2*9109^2*9649^2*10253^2", 245, 16759, 6, nullptr},
    {"260-bit", "1248045507865502270977250845951694434798578493856490782548653674169732908101560",
     "2^3*3^5*5*7^2*17*19*29*31*43^2*53^2*149^2*211^2*227^2*233*827*919^2*2659*4723^2*6907^2*10831*16691^2*24551",
     "11^2*13^2*23^2*71^2*107^2*263^2*587^2*1021^2*4297^2*6491^2*7309^2*8089^2*9049^2*19009^2", 260, 24551, 6, nullptr},
    {"215-bit", "51963397732665557125190357543988479960188331933248699616266017360",
     "2^4*3^5*5*7*11^2*647*911*919^2*1103^2*2099^2*2203^2*2423^2*5279^2*8641^2*19949",
     "19^2*23^2*47^2*277^2*359^2*419^2*541^2*887^2*1993^2*4549^2*4813^2*12721^2", 215, 19949, 1, nullptr},
    {"273-bit", "13751398930221343029252446890555634360426232035770955214339102967231667741706727080",
     "2^3*3^5*5*59*103^2*113^2*1697*2381*2383^2*2399^2*3623^2*4733*9151^2*10607^2*16267*18059^2*18289*23603",
     "11^4*17^2*53^2*83^2*109^2*227^2*263^2*347^2*373^2*599^2*2341^2*7883^2*10223^2*10883^2*12511^2", 273, 23603, 6,
     nullptr},
    {"201-bit", "2317395102010090979961970844394697249269453177012017537196644",
     "2^2*13*53^2*113*139^2*269^2*347^2*509^4*569^2*743^2*12823^2*14149*29881",
     "3^9*5*23^2*43^2*167^2*179^2*227*349^2*613^2*661^2*2927^2*4099^2*6421^2", 201, 29881, 1, "13*113*14149*29881"},
};

Factorization parse_factors(const std::string& text) {
    Factorization f;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
        const auto caret = tok.find('^');
        const std::uint64_t p = std::stoull(tok.substr(0, caret));
        const unsigned e = caret == std::string::npos ? 1 : static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
        f.factors.push_back({p, e});
    }
    return f;
}

mpz_class product_of(const std::string& text) {
    mpz_class v = 1;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, '*')) v *= mpz_class(tok);
    return v;
}

Outcome published_pairs() {
    Outcome o;
    const auto dir = fs::temp_directory_path() / ("twinsmooth-accept-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::ostringstream summary;
    int passed = 0;
    for (const auto& pub : kPublished) {
        const auto start = Clock::now();
        TwinRecord rec;
        rec.m = mpz_class(pub.m);
        rec.bits = pub.bits;
        rec.smoothness = pub.smoothness;
        rec.m_factors = parse_factors(pub.m_factors);
        rec.m1_factors = parse_factors(pub.m1_factors);
        rec.x = 2 * rec.m + 1;
        rec.n = pub.n;
        rec.sum_prime = is_probable_prime(rec.x);
        rec.strategy = Strategy::SmallCoefficient;
        // Lehmer triple from the pair; a printed coefficient replaces the computed one.
        const auto bound = primes_up_to(pub.smoothness);
        const auto t = triple_from_pair(rec.m, bound);
        rec.delta = pub.delta ? product_of(pub.delta) : t.delta;
        rec.y = sqrt(mpz_class((rec.x * rec.x - 1) / (2 * rec.delta)));

        const auto verdict = cli::verify_record(rec, bound);

        // Same record through the command-line verifier.
        const auto file = dir / (std::string(pub.label) + ".jsonl");
        std::ofstream(file) << cli::record_to_line(rec, cli::utc_timestamp()) << '\n';
        std::ostringstream out, err;
        const int code = cli::run_cli({"verify", "--in", file.string(), "--b", std::to_string(pub.smoothness)}, out, err);

        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        const bool ok = verdict.ok() && code == 0 && secs < kLimit[6];
        passed += ok;
        std::string line = std::string(pub.label) + ": " + (ok ? "verified" : "NOT verified") + ", delta=" + str(t.delta) +
                           " n=" + std::to_string(t.n) + " (stated " + std::to_string(pub.n) +
                           (pub.delta ? ", stated delta=" + str(rec.delta) : std::string()) + ")";
        for (const auto& f : verdict.failed()) line += "; " + f;
        if (secs >= kLimit[6]) line += "; took " + std::to_string(secs) + " s";
        if (!ok) o.fail(line);
        else o.notes.push_back(line);
        summary << pub.label << (ok ? " ok " : " FAIL ");
    }
    fs::remove_all(dir);

    // Rebuild each pair from its fundamental solution.
    for (const auto& pub : kPublished) {
        const mpz_class m(pub.m);
        const auto t = triple_from_pair(m, primes_up_to(pub.smoothness));
        const auto out = fundamental_solution(2 * t.delta);
        const auto* fund = std::get_if<PellSolution>(&out);
        if (fund == nullptr) {
            o.fail(std::string(pub.label) + ": no fundamental solution");
            continue;
        }
        const mpz_class m1 = (fund->x - 1) / 2;
        const bool rebuilt = m_n_from_m1(m1, static_cast<unsigned>(t.n)) == m;
        o.expect(rebuilt, std::string(pub.label) + ": m_n(m1) does not reproduce m");
        o.notes.push_back(std::string(pub.label) + ": m1=" + str(m1) + " lifts to m at n=" + std::to_string(t.n) +
                          (rebuilt ? "" : " FAILED"));
    }
    o.summary = std::to_string(passed) + "/5 published pairs verified: " + summary.str();
    return o;
}

// ---- 7: maximal m_1 bit sizes ----

Outcome m1_bit_bounds() {
    Outcome o;
    const unsigned printed[] = {256, 127, 84, 63, 50, 41, 35, 31, 27, 24, 22, 20};
    std::string row;
    for (unsigned n = 1; n <= 12; ++n) {
        const auto t = max_m1_bits(256, n);
        row += (t ? std::to_string(*t) : "-") + " ";
        o.expect(t && *t == printed[n - 1], "n=" + std::to_string(n));
    }
    o.summary = "row " + row;
    return o;
}

// ---- 8: high-order search at desk scale ----

Outcome high_order_completeness() {
    Outcome o;
    SearchConfig cfg;
    cfg.bound = primes_up_to(7);
    cfg.b_min = 2;
    cfg.b_max = 16;
    cfg.s = 2;
    std::set<mpz_class> got;
    high_order_search(cfg, [&](TwinRecord r) { got.insert(r.m); });

    const mpz_class limit(65536);
    std::set<mpz_class> expect;
    for (unsigned long w = 1; w < 65536; ++w) {
        if (!oracle::smooth(mpz_class(w) * (w + 1), 7)) continue;
        for (unsigned n = 2; n <= 4; ++n) {
            const auto [xn, Un] = oracle::lucas(mpz_class(2 * w + 1), n);
            const mpz_class mn = (xn - 1) / 2;
            if (mn < limit && oracle::smooth(Un, 7)) expect.insert(mn);
        }
    }
    o.expect(got == expect, "search found " + std::to_string(got.size()) + ", oracle " + std::to_string(expect.size()));
    std::string list;
    for (const auto& m : expect) list += str(m) + " ";
    o.summary = std::to_string(expect.size()) + " pairs: " + list;
    return o;
}

// ---- 9: lifting identities ----

Outcome lifting_identities() {
    Outcome o;
    std::mt19937_64 rng(20240601);
    constexpr int kSamples = 10000;
    for (int i = 0; i < kSamples; ++i) {
        mpz_class m1 = mpz_class(std::to_string(rng())) + 1;  // 1 .. 2^64
        const unsigned n = 1 + static_cast<unsigned>(rng() % 12);
        const mpz_class v = eval(v_coeffs(n), m1);
        const mpz_class mn = m_n_from_m1(m1, n);
        const std::string tag = "m1=" + str(m1) + " n=" + std::to_string(n);
        o.expect(mn * (mn + 1) == m1 * (m1 + 1) * v * v, tag + ": product identity");
        o.expect(mpz_divisible_p(mn.get_mpz_t(), m1.get_mpz_t()), tag + ": m1 does not divide m_n");
        const mpz_class target = n % 2 == 0 ? mn : mpz_class(mn + 1);
        const mpz_class m1p = m1 + 1;
        o.expect(mpz_divisible_p(target.get_mpz_t(), m1p.get_mpz_t()), tag + ": m1+1 divisibility");
        if (n >= 2) {
            o.expect(m1 * v <= mn && mn < m1p * v, tag + ": sandwich bound");
            mpz_class m1n;
            mpz_pow_ui(m1n.get_mpz_t(), m1.get_mpz_t(), n);
            o.expect(mn > pow_ui(4, n - 1) * m1n, tag + ": lower bound");
        }
    }
    o.summary = std::to_string(kSamples) + " random (m1 <= 2^64, n <= 12)";
    return o;
}

// ---- 10: combination closure ----

Outcome chm_closure() {
    Outcome o;
    const auto bound = primes_up_to(7);
    std::set<mpz_class> seeds;
    for (std::uint64_t m : sieve_twin_smooth(1, 6, bound)) seeds.insert(mpz_class(std::to_string(m)));
    const auto S = chm_expand(seeds, bound, 1000);
    o.expect(chm_round(S).empty(), "no fixed point after 1000 rounds");
    std::set<mpz_class> all;
    for (const auto& m : enumerate_all_twins(bound).ms()) all.insert(m);
    for (const auto& m : S) {
        o.expect(oracle::smooth(m * (m + 1), 7), "m=" + str(m) + " is not twin 7-smooth");
        o.expect(all.count(m) == 1, "m=" + str(m) + " missing from the complete B=7 set");
    }
    std::string seed_list, list;
    for (const auto& m : seeds) seed_list += str(m) + " ";
    o.summary = "seeds " + seed_list + "-> " + std::to_string(S.size()) + " of " + std::to_string(all.size()) +
                " twin 7-smooth pairs";
    return o;
}

// ---- 11: throughput ----

Outcome throughput() {
    Outcome o;
    const auto bound = primes_up_to(1 << 16);
    std::mt19937_64 rng(11);
    // Random squarefree smooth coefficients within a factor 2 of 2^40.
    const mpz_class lo = pow_ui(2, 40), hi = pow_ui(2, 41);
    std::vector<mpz_class> deltas;
    while (deltas.size() < 20000) {
        mpz_class d = 1;
        std::set<std::uint32_t> used;
        while (d < lo) {
            const auto p = bound.primes[1 + rng() % (bound.count() - 1)];
            if (!used.insert(p).second) continue;
            d *= p;
        }
        if (d < hi) deltas.push_back(d);
    }
    const mpz_class cap = pow_ui(2, 258);
    std::size_t solved = 0;
    const auto start = Clock::now();
    for (const auto& d : deltas) solved += std::holds_alternative<PellSolution>(fundamental_solution(2 * d, cap));
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const double rate = deltas.size() / secs;
    std::ostringstream s;
    s.precision(0);
    s << std::fixed << rate << " equations/s on one core (" << deltas.size() << " solves, " << solved
      << " under the cap; target 1e4/s reported, not asserted" << (rate >= 1e4 ? ", met" : ", not met") << ")";
    o.summary = s.str();
    return o;
}

// ---- 12: kill and resume ----

pid_t spawn(const std::vector<std::string>& args) {
    std::vector<char*> argv;
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    const pid_t pid = fork();
    if (pid == 0) {
        const int devnull = ::open("/dev/null", O_WRONLY);
        if (devnull >= 0) dup2(devnull, 2);
        execv(argv[0], argv.data());
        _exit(127);
    }
    return pid;
}

int wait_for(pid_t pid) {
    int status = 0;
    waitpid(pid, &status, 0);
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

std::set<std::string> m_set(const fs::path& p) {
    std::set<std::string> out;
    for (const auto& r : cli::read_records(p)) out.insert(str(r.m));
    return out;
}

Outcome crash_resume() {
    Outcome o;
    const auto dir = fs::temp_directory_path() / ("twinsmooth-resume-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::vector<std::string> base = {TWINSMOOTH_CLI, "search-delta", "--b", "113", "--delta-max", "1000000",
                                           "--bits-min", "2"};
    auto with = [&](std::initializer_list<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra);
        return a;
    };

    const auto ref = dir / "reference.jsonl";
    o.expect(wait_for(spawn(with({"--out", ref.string()}))) == 0, "uninterrupted run failed");
    const auto reference = m_set(ref);

    std::random_device rd;
    const unsigned seed = rd();
    std::mt19937 rng(seed);
    constexpr unsigned kShards = 2;
    std::set<std::string> merged;
    std::string kills;
    for (unsigned i = 0; i < kShards; ++i) {
        const std::string shard = std::to_string(i) + "/" + std::to_string(kShards);
        const auto out = dir / ("shard" + std::to_string(i) + ".jsonl");
        const auto cp = dir / ("shard" + std::to_string(i) + ".ckpt");
        const auto args = with({"--shard", shard, "--out", out.string(), "--checkpoint", cp.string()});
        const int delay_ms = 20 + static_cast<int>(rng() % 1200);
        const pid_t pid = spawn(args);
        std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
        kill(pid, SIGKILL);
        const int killed = wait_for(pid);
        std::uint64_t done = 0;
        if (fs::exists(cp))
            if (auto c = cli::read_checkpoint(cp)) done = c->items_done;
        kills += "shard " + shard + " killed after " + std::to_string(delay_ms) + " ms at item " + std::to_string(done) +
                 (killed == 0 ? " (already finished)" : "") + "; ";

        auto resume = args;
        resume.push_back("--resume");
        o.expect(wait_for(spawn(resume)) == 0, "resume of shard " + shard + " failed");
        for (const auto& r : cli::read_records(out))
            if (!merged.insert(str(r.m)).second) o.fail("shard " + shard + " repeated m=" + str(r.m));
    }
    o.expect(merged == reference, "merged " + std::to_string(merged.size()) + " records, reference " +
                                      std::to_string(reference.size()));
    o.summary = std::to_string(reference.size()) + " records, seed " + std::to_string(seed) + "; " + kills;
    fs::remove_all(dir);
    return o;
}

const std::function<Outcome()> kCriteria[] = {
    polynomial_tables, identity_suite,  pell_oracle,           bijection,          enumeration,  published_pairs,
    m1_bit_bounds,         high_order_completeness, lifting_identities, chm_closure, throughput,   crash_resume,
};

const char* const kNames[] = {
    "polynomial tables",       "polynomial identities", "Pell solver vs oracle", "bijection round trip",
    "complete enumeration",    "published pairs",       "m1 bit bounds",         "high-order completeness",
    "lifting identities",      "combination closure",   "solver throughput",     "kill and resume",
};

bool run_one(int k) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = kCriteria[k - 1]();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (kLimit[k] > 0 && secs >= kLimit[k])
        o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(kLimit[k]) + " s");
    std::printf("%s criterion %d (%s): %s [%.2f s", o.ok ? "PASS" : "FAIL", k, kNames[k - 1], o.summary.c_str(), secs);
    if (kLimit[k] > 0) std::printf(" / %.0f s", kLimit[k]);
    std::printf("]\n");
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    return o.ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 2) {
        std::fprintf(stderr, "usage: %s [criterion 1-12]\n", argv[0]);
        return 2;
    }
    if (argc == 2) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > 12) {
            std::fprintf(stderr, "criterion must be 1..12\n");
            return 2;
        }
        return run_one(k) ? 0 : 1;
    }
    bool all = true;
    for (int k = 1; k <= 12; ++k) all = run_one(k) && all;
    return all ? 0 : 1;
}
