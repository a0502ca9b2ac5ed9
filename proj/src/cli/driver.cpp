#include "twinsmooth/cli/driver.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "twinsmooth/cli/checkpoint.hpp"
#include "twinsmooth/cli/partition.hpp"
#include "twinsmooth/cli/records.hpp"
#include "twinsmooth/cli/verify.hpp"
#include "twinsmooth/error.hpp"
#include "twinsmooth/pell.hpp"

namespace twinsmooth::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::uint64_t b = 0;
    std::optional<unsigned> bits_min, bits_max;
    unsigned s = 6;
    std::string delta_max;
    unsigned k = 4;
    std::string delta_lo = "1";
    std::string delta_hi;
    unsigned n_max = 12;
    bool powers_of_two_only = false;
    std::string cap;
    std::string out;
    std::string checkpoint;
    std::string shard = "0/1";
    bool resume = false;

    std::string d, lo, hi, in;
    std::vector<std::string> seeds, ms;
    unsigned rounds = 32;
    unsigned threads = 1;
    unsigned batch = 256;
    std::uint64_t segment = kDefaultSieveSegment;
};

// "123", "2^258" and "10^6" are all accepted.
mpz_class parse_big(const std::string& text, const char* flag) {
    mpz_class v;
    const auto caret = text.find('^');
    if (caret == std::string::npos) {
        if (text.empty() || v.set_str(text, 10) != 0) throw UsageError(std::string(flag) + ": not an integer: " + text);
        return v;
    }
    mpz_class base;
    unsigned long e = 0;
    try {
        std::size_t used = 0;
        e = std::stoul(text.substr(caret + 1), &used);
        if (used != text.size() - caret - 1) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": bad exponent in " + text);
    }
    if (base.set_str(text.substr(0, caret), 10) != 0) throw UsageError(std::string(flag) + ": not an integer: " + text);
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), e);
    return v;
}

std::uint64_t to_u64(const mpz_class& v, const char* flag) {
    if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) throw UsageError(std::string(flag) + " out of range");
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, -1, sizeof r, 0, 0, v.get_mpz_t());
    return r;
}

std::vector<mpz_class> parse_list(const std::vector<std::string>& items, const char* flag) {
    std::vector<mpz_class> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) out.push_back(parse_big(tok, flag));
    }
    return out;
}

// Everything that changes which records a run produces, in a fixed order.
std::string canonical_config(const Options& o) {
    std::ostringstream s;
    s << "command=" << o.command << "\nb=" << o.b << "\nbits-min=" << (o.bits_min ? std::to_string(*o.bits_min) : "")
      << "\nbits-max=" << (o.bits_max ? std::to_string(*o.bits_max) : "") << "\ns=" << o.s
      << "\ndelta-max=" << o.delta_max << "\nk=" << o.k << "\ndelta-lo=" << o.delta_lo << "\ndelta-hi=" << o.delta_hi
      << "\nn-max=" << o.n_max << "\npowers-of-two-only=" << o.powers_of_two_only << "\ncap=" << o.cap
      << "\nshard=" << o.shard << "\nlo=" << o.lo << "\nhi=" << o.hi << "\nin=" << o.in << "\nrounds=" << o.rounds
      << "\nsegment=" << o.segment << "\nseeds=";
    for (const auto& v : o.seeds) s << v << ',';
    s << "\nm=";
    for (const auto& v : o.ms) s << v << ',';
    return s.str();
}

SmoothnessBound require_bound(const Options& o) {
    if (o.b == 0) throw UsageError(o.command + " requires --b");
    return primes_up_to(o.b);
}

SearchConfig search_config(const Options& o, bool strict) {
    SearchConfig cfg;
    cfg.bound = require_bound(o);
    if (!strict) cfg.b_min = 0;
    if (o.bits_min) cfg.b_min = *o.bits_min;
    if (o.bits_max) cfg.b_max = *o.bits_max;
    cfg.s = o.s;
    if (!o.delta_max.empty()) cfg.delta_max = parse_big(o.delta_max, "--delta-max");
    cfg.k = o.k;
    cfg.delta_lo = parse_big(o.delta_lo, "--delta-lo");
    if (!o.delta_hi.empty()) cfg.delta_hi = parse_big(o.delta_hi, "--delta-hi");
    cfg.n_lift_max = o.n_max;
    cfg.powers_of_two_only = o.powers_of_two_only;
    if (!o.cap.empty()) cfg.x_cap_override = parse_big(o.cap, "--cap");
    if (strict) cfg.validate();
    return cfg;
}

// ---- work items ----

struct WorkItem {
    std::string cursor;
    std::function<std::vector<TwinRecord>()> run;
};

struct WorkSource {
    std::string strategy;
    std::function<std::optional<WorkItem>()> next;
    bool sequential = false;  // items depend on their predecessors
    std::function<void(std::ostream&)> finish;
};

// Fixed-size windows over one shard of [lo, hi].
class Windows {
public:
    Windows(std::optional<Range> r, std::uint64_t width) : width_(width) {
        if (r) {
            cur_ = r->lo;
            hi_ = r->hi;
            live_ = true;
        }
    }
    std::optional<Range> next() {
        if (!live_ || cur_ > hi_) return std::nullopt;
        Range w{cur_, std::min<mpz_class>(hi_, cur_ + width_ - 1)};
        cur_ = w.hi + 1;
        return w;
    }

private:
    mpz_class cur_, hi_;
    std::uint64_t width_;
    bool live_ = false;
};

struct Context {
    Options opt;
    Shard shard;
    std::optional<mpz_class> m_limit;  // drop records above
    std::ostream& out;
    std::ostream& err;
};

WorkSource sieve_source(Context& ctx) {
    const SmoothnessBound bound = require_bound(ctx.opt);
    const SearchConfig cfg = search_config(ctx.opt, false);
    const mpz_class lo = ctx.opt.lo.empty() ? mpz_class(1) : parse_big(ctx.opt.lo, "--lo");
    if (ctx.opt.hi.empty()) throw UsageError("sieve-twins requires --hi");
    const mpz_class hi = parse_big(ctx.opt.hi, "--hi");
    if (lo < 1 || hi < lo || mpz_sizeinbase(hi.get_mpz_t(), 2) > 62) throw UsageError("need 1 <= lo <= hi < 2^62");
    auto windows = std::make_shared<Windows>(partition({lo, hi}, ctx.shard.id, ctx.shard.count), ctx.opt.segment);
    const std::uint64_t segment = ctx.opt.segment;
    WorkSource src;
    src.strategy = "sieve";
    src.next = [=]() -> std::optional<WorkItem> {
        auto w = windows->next();
        if (!w) return std::nullopt;
        const std::uint64_t a = to_u64(w->lo, "--lo"), z = to_u64(w->hi, "--hi");
        return WorkItem{"m<=" + w->hi.get_str(), [=] {
                            std::vector<TwinRecord> recs;
                            for (std::uint64_t m : sieve_twin_smooth(a, z, bound, segment))
                                recs.push_back(make_record(mpz_class(m), bound, Strategy::Sieve, cfg.b_min));
                            return recs;
                        }};
    };
    return src;
}

// Q' coefficients of one shard of [lo, hi], one per work item.
std::function<std::optional<mpz_class>()> q_prime_stream(const SmoothnessBound& bound, const Context& ctx,
                                                          const mpz_class& lo, const mpz_class& hi) {
    auto r = partition({lo, hi}, ctx.shard.id, ctx.shard.count);
    if (!r) return [] { return std::optional<mpz_class>(); };
    auto e = std::make_shared<QPrimeEnumerator>(bound, r->hi, r->lo);
    return [e] { return e->next(); };
}

WorkSource enumerate_source(Context& ctx) {
    const SearchConfig cfg = search_config(ctx.opt, false);
    // Upper end of Q': the product of all primes up to B.
    mpz_class top = 1;
    for (auto p : cfg.bound.primes) top *= p;
    auto deltas = q_prime_stream(cfg.bound, ctx, 1, top);
    std::optional<mpz_class> cap;
    if (!ctx.opt.cap.empty()) cap = parse_big(ctx.opt.cap, "--cap");
    auto unresolved = std::make_shared<std::vector<mpz_class>>();
    auto guard = std::make_shared<std::mutex>();

    WorkSource src;
    src.strategy = "enumeration";
    src.next = [=]() -> std::optional<WorkItem> {
        auto delta = deltas();
        if (!delta) return std::nullopt;
        const mpz_class d = *delta;
        return WorkItem{"delta=" + d.get_str(), [=] {
                            std::vector<TwinRecord> recs;
                            auto found = twins_for_delta(d, cfg.bound, cap);
                            if (!found) {
                                std::lock_guard lock(*guard);
                                unresolved->push_back(d);
                                return recs;
                            }
                            for (const auto& t : *found)
                                recs.push_back(make_record(t, cfg.bound, Strategy::Enumeration, cfg.b_min));
                            return recs;
                        }};
    };
    src.finish = [=](std::ostream& err) {
        if (unresolved->empty()) return;
        err << "incomplete: " << unresolved->size() << " coefficient(s) exceed the cap:";
        for (const auto& d : *unresolved) err << ' ' << d;
        err << '\n';
    };
    return src;
}

WorkSource high_order_source(Context& ctx) {
    const SearchConfig cfg = search_config(ctx.opt, true);
    auto passes = std::make_shared<std::vector<HighOrderPass>>(high_order_passes(cfg));
    auto pass_idx = std::make_shared<std::size_t>(0);
    auto windows = std::make_shared<std::optional<Windows>>();
    const Shard shard = ctx.shard;
    const std::uint64_t segment = ctx.opt.segment;

    WorkSource src;
    src.strategy = "high-order";
    src.next = [=]() -> std::optional<WorkItem> {
        for (;;) {
            if (*pass_idx >= passes->size()) return std::nullopt;
            const HighOrderPass& pass = (*passes)[*pass_idx];
            if (!*windows) windows->emplace(partition({1, mpz_class(std::to_string(pass.w_max))}, shard.id, shard.count), segment);
            if (auto w = (*windows)->next()) {
                const unsigned n = pass.n;
                const std::uint64_t a = to_u64(w->lo, "w"), z = to_u64(w->hi, "w");
                return WorkItem{"n=" + std::to_string(n) + " w<=" + std::to_string(z),
                                [=] { return high_order_window(cfg, n, a, z); }};
            }
            windows->reset();
            ++*pass_idx;
        }
    };
    return src;
}

WorkSource delta_source(Context& ctx, bool small_primes) {
    const SearchConfig cfg = search_config(ctx.opt, true);
    std::function<std::optional<mpz_class>()> deltas;
    if (small_primes) {
        if (ctx.opt.delta_hi.empty()) throw UsageError("search-small-primes requires --delta-hi");
        auto r = partition({cfg.delta_lo, cfg.delta_hi}, ctx.shard.id, ctx.shard.count);
        if (r) {
            auto e = std::make_shared<KPrimeProducts>(cfg.bound, cfg.k, r->lo, r->hi);
            deltas = [e] { return e->next(); };
        } else {
            deltas = [] { return std::optional<mpz_class>(); };
        }
    } else {
        if (!cfg.delta_max) throw UsageError("search-delta requires --delta-max");
        deltas = q_prime_stream(cfg.bound, ctx, cfg.delta_lo, *cfg.delta_max);
    }
    const Strategy strategy = small_primes ? Strategy::SmallPrimes : Strategy::SmallCoefficient;
    WorkSource src;
    src.strategy = to_string(strategy);
    src.next = [=]() -> std::optional<WorkItem> {
        auto delta = deltas();
        if (!delta) return std::nullopt;
        const mpz_class d = *delta;
        return WorkItem{"delta=" + d.get_str(), [=] { return solve_delta(cfg, d, strategy); }};
    };
    return src;
}

WorkSource lift_source(Context& ctx) {
    const SearchConfig cfg = search_config(ctx.opt, true);
    std::vector<TwinRecord> fundamentals;
    if (!ctx.opt.in.empty())
        for (auto& rec : read_records(ctx.opt.in))
            if (rec.n == 1) fundamentals.push_back(std::move(rec));
    for (const auto& m : parse_list(ctx.opt.ms, "--m")) {
        TwinRecord rec = make_record(m, cfg.bound, Strategy::Lift, cfg.b_min);
        if (rec.n != 1) throw UsageError("m=" + m.get_str() + " is solution " + std::to_string(rec.n) + ", not fundamental");
        fundamentals.push_back(std::move(rec));
    }
    if (fundamentals.empty()) throw UsageError("lift needs fundamental records via --in or --m");

    auto inputs = std::make_shared<std::vector<TwinRecord>>(std::move(fundamentals));
    auto r = partition({0, mpz_class(std::to_string(inputs->size() - 1))}, ctx.shard.id, ctx.shard.count);
    auto idx = std::make_shared<std::size_t>(r ? r->lo.get_ui() : 1);
    const std::size_t end = r ? r->hi.get_ui() + 1 : 0;

    WorkSource src;
    src.strategy = "lift";
    src.next = [=]() -> std::optional<WorkItem> {
        if (*idx >= end) return std::nullopt;
        const TwinRecord fund = (*inputs)[(*idx)++];
        return WorkItem{"m1=" + fund.m.get_str(), [=] { return lift_solutions(fund, cfg); }};
    };
    return src;
}

// Item 0 emits the seeds, item r >= 1 runs combination round r. The working set is
// rebuilt from the results file on resume, so every element is always written out.
WorkSource chm_source(Context& ctx, const std::vector<mpz_class>& already) {
    if (ctx.shard.count != 1) throw UsageError("chm cannot be sharded");
    const SearchConfig cfg = search_config(ctx.opt, false);
    std::set<mpz_class> seeds;
    for (auto& m : parse_list(ctx.opt.seeds, "--seeds")) seeds.insert(m);
    if (!ctx.opt.in.empty())
        for (const auto& rec : read_records(ctx.opt.in)) seeds.insert(rec.m);
    if (seeds.empty()) throw UsageError("chm needs seeds via --seeds or --in");
    for (const auto& m : seeds)
        if (m < 1 || !is_b_smooth(m, cfg.bound) || !is_b_smooth(m + 1, cfg.bound))
            throw Error(Errc::invalid_seed, "seed " + m.get_str() + " is not a twin smooth integer");
    if (ctx.opt.rounds < 1) throw UsageError("--rounds must be at least 1");

    auto S = std::make_shared<std::set<mpz_class>>(seeds);
    S->insert(already.begin(), already.end());
    auto round = std::make_shared<unsigned>(0);
    auto fixed = std::make_shared<bool>(false);
    const unsigned rounds = ctx.opt.rounds;

    WorkSource src;
    src.strategy = "chm";
    src.sequential = true;
    src.next = [=]() -> std::optional<WorkItem> {
        if (*round > rounds) return std::nullopt;
        const unsigned r = (*round)++;
        return WorkItem{"round=" + std::to_string(r), [=] {
                            std::vector<TwinRecord> recs;
                            if (r == 0) {
                                for (const auto& m : seeds)
                                    recs.push_back(make_record(m, cfg.bound, Strategy::Chm, cfg.b_min));
                                return recs;
                            }
                            if (*fixed) return recs;
                            auto fresh = chm_round(*S);
                            if (fresh.empty()) *fixed = true;
                            for (const auto& m : fresh)
                                recs.push_back(make_record(m, cfg.bound, Strategy::Chm, cfg.b_min));
                            S->merge(fresh);
                            return recs;
                        }};
    };
    src.finish = [=](std::ostream& err) {
        err << "chm: " << S->size() << " elements" << (*fixed ? ", fixed point reached" : "") << '\n';
    };
    return src;
}

// ---- execution ----

std::vector<std::vector<TwinRecord>> run_batch(const std::vector<WorkItem>& items, unsigned threads, bool sequential) {
    std::vector<std::vector<TwinRecord>> results(items.size());
    if (sequential || threads <= 1 || items.size() <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) results[i] = items[i].run();
        return results;
    }
    std::vector<std::future<void>> workers;
    for (unsigned t = 0; t < threads; ++t)
        workers.push_back(std::async(std::launch::async, [&, t] {
            for (std::size_t i = t; i < items.size(); i += threads) results[i] = items[i].run();
        }));
    for (auto& w : workers) w.get();
    return results;
}

int execute(Context& ctx, const std::function<WorkSource(const std::vector<mpz_class>&)>& make_source) {
    const Options& o = ctx.opt;
    if (!o.checkpoint.empty() && o.out.empty()) throw UsageError("--checkpoint needs --out");
    if (o.resume && o.checkpoint.empty()) throw UsageError("--resume needs --checkpoint");
    if (o.batch < 1) throw UsageError("--batch must be at least 1");

    const std::string digest = config_digest(canonical_config(o));
    std::optional<Checkpoint> cp;
    if (o.resume) cp = read_checkpoint(o.checkpoint);

    std::uint64_t out_bytes = 0;
    std::vector<mpz_class> existing;
    if (!o.out.empty()) {
        std::error_code ec;
        const bool exists = fs::exists(o.out, ec);
        out_bytes = exists ? fs::file_size(o.out) : 0;
        if (cp) {
            if (cp->config_digest != digest) throw UsageError("checkpoint was written for a different configuration");
            if (cp->shard_id != ctx.shard.id || cp->shard_count != ctx.shard.count)
                throw UsageError("checkpoint belongs to another shard");
            if (cp->out_bytes > out_bytes) throw IoError("results file is shorter than the checkpoint records");
            // Anything past the checkpoint came from an item that never completed.
            fs::resize_file(o.out, cp->out_bytes);
            out_bytes = cp->out_bytes;
            for (const auto& rec : read_records(o.out)) existing.push_back(rec.m);
        }
    }

    WorkSource src = make_source(existing);

    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::app | std::ios::binary);
        if (!file) throw IoError("cannot open " + o.out);
    }
    std::ostream& sink = o.out.empty() ? ctx.out : file;

    std::uint64_t items_done = 0;
    std::string cursor;
    if (cp) {
        if (cp->strategy != src.strategy) throw UsageError("checkpoint belongs to strategy " + cp->strategy);
        for (; items_done < cp->items_done; ++items_done)
            if (!src.next()) throw UsageError("checkpoint is past the end of the work list");
        cursor = cp->cursor;
    }

    auto save = [&] {
        if (o.checkpoint.empty()) return;
        write_checkpoint(o.checkpoint, Checkpoint{src.strategy, cursor, items_done, ctx.shard.id, ctx.shard.count,
                                                  digest, utc_timestamp(), out_bytes});
    };
    save();

    RecordCollector collector([&](TwinRecord rec) {
        const std::string line = record_to_line(rec, utc_timestamp()) + '\n';
        sink << line;
        out_bytes += line.size();
    });
    for (const auto& m : existing) collector.mark_seen(m);

    std::vector<WorkItem> batch;
    for (bool more = true; more;) {
        batch.clear();
        while (batch.size() < o.batch) {
            auto item = src.next();
            if (!item) {
                more = false;
                break;
            }
            batch.push_back(std::move(*item));
        }
        if (src.sequential) {
            // Each item must observe the state left by the previous one.
            for (auto& item : batch) {
                for (auto& rec : item.run())
                    if (!ctx.m_limit || rec.m <= *ctx.m_limit) collector(std::move(rec));
                sink.flush();
                if (!sink) throw IoError("write failed");
                ++items_done;
                cursor = item.cursor;
                save();
            }
            continue;
        }
        auto results = run_batch(batch, o.threads, false);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            for (auto& rec : results[i])
                if (!ctx.m_limit || rec.m <= *ctx.m_limit) collector(std::move(rec));
            sink.flush();
            if (!sink) throw IoError("write failed");
            ++items_done;
            cursor = batch[i].cursor;
            save();
        }
    }

    if (src.finish) src.finish(ctx.err);
    ctx.err << src.strategy << ": " << items_done << " items, " << collector.emitted() << " records, "
            << collector.duplicates() << " duplicates\n";
    return kOk;
}

int solve_pell(const Context& ctx) {
    if (ctx.opt.d.empty()) throw UsageError("solve-pell requires --d");
    const mpz_class D = parse_big(ctx.opt.d, "--d");
    std::optional<mpz_class> cap;
    if (!ctx.opt.cap.empty()) cap = parse_big(ctx.opt.cap, "--cap");
    const auto outcome = fundamental_solution(D, cap);
    if (const auto* sol = std::get_if<PellSolution>(&outcome)) {
        ctx.out << "x=" << sol->x << " y=" << sol->y << '\n';
    } else if (const auto* over = std::get_if<ExceedsCap>(&outcome)) {
        ctx.out << "ExceedsCap D=" << over->D << " convergents=" << over->convergents_examined << '\n';
    } else {
        ctx.out << "NotApplicable D=" << D << " is a perfect square\n";
    }
    return kOk;
}

int verify(const Context& ctx) {
    if (ctx.opt.in.empty()) throw UsageError("verify requires --in");
    std::optional<SmoothnessBound> bound;
    if (ctx.opt.b != 0) bound = primes_up_to(ctx.opt.b);
    std::ifstream in(ctx.opt.in);
    if (!in) throw IoError("cannot read " + ctx.opt.in);

    std::size_t total = 0, failed = 0, lineno = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++total;
        TwinRecord rec;
        try {
            rec = record_from_line(line);
        } catch (const std::exception& e) {
            ++failed;
            ctx.out << "FAIL line " << lineno << ": " << e.what() << '\n';
            continue;
        }
        const Verdict v = verify_record(rec, bound);
        if (v.ok()) {
            ctx.out << "ok m=" << rec.m << " bits=" << rec.bits << " smoothness=" << rec.smoothness
                    << " delta=" << rec.delta << " n=" << v.triple->n << '\n';
            continue;
        }
        ++failed;
        ctx.out << "FAIL m=" << rec.m << ":";
        const auto bad = v.failed();
        for (std::size_t i = 0; i < bad.size(); ++i) ctx.out << (i ? "; " : " ") << bad[i];
        ctx.out << '\n';
    }
    ctx.err << "verified " << total << " records, " << failed << " failed\n";
    return failed == 0 ? kOk : kVerifyFailed;
}

int dispatch(Context& ctx) {
    const std::string& c = ctx.opt.command;
    if (c == "solve-pell") return solve_pell(ctx);
    if (c == "verify") return verify(ctx);

    ctx.shard = parse_shard(ctx.opt.shard);
    const bool strict = c != "sieve-twins" && c != "enumerate" && c != "chm";
    if (strict || ctx.opt.bits_max) {
        const SearchConfig cfg = search_config(ctx.opt, strict);
        if (c != "chm") ctx.m_limit = cfg.m_max();
    }

    if (c == "sieve-twins") return execute(ctx, [&](const auto&) { return sieve_source(ctx); });
    if (c == "enumerate") return execute(ctx, [&](const auto&) { return enumerate_source(ctx); });
    if (c == "search-high-order") return execute(ctx, [&](const auto&) { return high_order_source(ctx); });
    if (c == "search-delta") return execute(ctx, [&](const auto&) { return delta_source(ctx, false); });
    if (c == "search-small-primes") return execute(ctx, [&](const auto&) { return delta_source(ctx, true); });
    if (c == "lift") return execute(ctx, [&](const auto&) { return lift_source(ctx); });
    if (c == "chm") return execute(ctx, [&](const auto& seen) { return chm_source(ctx, seen); });
    throw UsageError("unknown command " + c);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Twin smooth integers from Pell equations"};
    app.set_config("--config", "", "key=value file; command-line flags override it");
    app.require_subcommand(1, 1);

    app.add_option("--b", o.b, "Smoothness bound B");
    app.add_option("--bits-min", o.bits_min, "Flag records with m below 2^bits-min");
    app.add_option("--bits-max", o.bits_max, "Drop records with m above 2^bits-max");
    app.add_option("--s", o.s, "Smallest solution index for the high-order search");
    app.add_option("--delta-max", o.delta_max, "Largest coefficient for search-delta");
    app.add_option("--k", o.k, "Prime count for search-small-primes");
    app.add_option("--delta-lo", o.delta_lo, "Coefficient range start");
    app.add_option("--delta-hi", o.delta_hi, "Coefficient range end");
    app.add_option("--n-max", o.n_max, "Largest solution index to lift to");
    app.add_flag("--powers-of-two-only", o.powers_of_two_only, "Lift to indices 2, 4, 8, ... only");
    app.add_option("--cap", o.cap, "Cap on x; accepts a^e");
    app.add_option("--out", o.out, "Results file (JSONL, appended)");
    app.add_option("--checkpoint", o.checkpoint, "Checkpoint file");
    app.add_option("--shard", o.shard, "Shard i/n");
    app.add_flag("--resume", o.resume, "Continue from the checkpoint");
    app.add_option("--d", o.d, "Pell coefficient D for solve-pell");
    app.add_option("--lo", o.lo, "Range start for sieve-twins");
    app.add_option("--hi", o.hi, "Range end for sieve-twins");
    app.add_option("--in", o.in, "Input results file");
    app.add_option("--m", o.ms, "Fundamental m values for lift (comma separated)");
    app.add_option("--seeds", o.seeds, "Seed m values for chm (comma separated)");
    app.add_option("--rounds", o.rounds, "Combination rounds for chm");
    app.add_option("--threads", o.threads, "Worker threads");
    app.add_option("--batch", o.batch, "Work items per batch");
    app.add_option("--segment", o.segment, "Sieve segment / window width")->check(CLI::PositiveNumber);

    const std::pair<const char*, const char*> commands[] = {
        {"sieve-twins", "Sieve [lo, hi] for twin smooth pairs"},
        {"solve-pell", "Fundamental solution of x^2 - D y^2 = 1"},
        {"enumerate", "Every twin smooth pair for a bound"},
        {"search-high-order", "Search n-th solutions with n >= s"},
        {"search-delta", "Fundamental solutions for every coefficient up to delta-max"},
        {"search-small-primes", "Coefficients made of k small primes"},
        {"lift", "Higher solutions of fundamental pairs"},
        {"chm", "Combination closure from seed pairs"},
        {"verify", "Recheck a results file"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }
    o.command = app.get_subcommands().front()->get_name();

    Context ctx{o, {}, std::nullopt, out, err};
    try {
        return dispatch(ctx);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace twinsmooth::cli
