#include "slrec/recognize.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "slrec/basecase.hpp"
#include "slrec/naming.hpp"
#include "slrec/stingray.hpp"

namespace slrec {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<int> iota_slots(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

// One pass through the pipeline. Budgets are shared with the caller.
struct Attempt {
    enum class Outcome { Ok, Failed, Exhausted } outcome = Outcome::Failed;
    std::string stage;
    Matrix L;
    Mslp slp;
};

Attempt run_once(const std::vector<Matrix>& X, const RecognitionOptions& opts, std::uint64_t seed, Budget& b1,
                 Budget& b2, Budget& b3, RecognitionResult& res) {
    const int d = X.front().rows();
    const FieldPtr F = X.front().field_ptr();
    std::mt19937_64 seeds(seed);
    Attempt at;
    WordGraph g;
    std::vector<Tracked> Xt;
    std::vector<NodeId> xin;
    for (const auto& x : X) {
        Xt.push_back({x, g.input()});
        xin.push_back(Xt.back().w);
    }
    auto fail = [&](const char* stage, bool exhausted) {
        at.outcome = exhausted ? Attempt::Outcome::Exhausted : Attempt::Outcome::Failed;
        at.stage = stage;
        return at;
    };

    // Descent to a degree-4 block.
    auto t0 = Clock::now();
    Matrix L1 = Matrix::identity(F, d);
    std::vector<Matrix> U;
    Mslp desc;
    res.chain_degrees.clear();
    if (d == 4) {
        U = X;
        res.chain_degrees = {4};
    } else {
        DescentStats ds;
        auto chain = going_down(g, Xt, b1, opts.strategy, seeds(), &ds);
        res.descent_restarts += ds.restarts;
        res.seconds.descent += since(t0);
        if (!chain) return fail("descent", true);
        for (const auto& node : *chain) res.chain_degrees.push_back(node.degree);
        const ChainNode& last = chain->back();
        L1 = last.L;
        std::vector<NodeId> uout;
        for (const auto& u : last.gens) {
            U.push_back(u.m);
            uout.push_back(u.w);
        }
        desc = compile_words(g, xin, uout, true);
    }

    // Base case on fresh inputs standing for U.
    t0 = Clock::now();
    std::vector<Tracked> Ut;
    std::vector<NodeId> uin;
    for (const auto& u : U) {
        Ut.push_back({u, g.input()});
        uin.push_back(Ut.back().w);
    }
    std::optional<std::vector<Tracked>> Y2;
    try {
        Y2 = recognize_base_case(g, Ut, b2, seeds());
    } catch (const BudgetExhausted&) {
    }
    res.seconds.basecase += since(t0);
    if (!Y2) return fail("basecase", b2.exhausted());
    std::vector<NodeId> y2out;
    for (const auto& y : *Y2) y2out.push_back(y.w);
    Mslp base = compile_words(g, uin, y2out, d == 4);

    // Ascent with inputs X followed by fresh inputs standing for Y2.
    t0 = Clock::now();
    StdGens start;
    start.n = 2;
    start.frame = L1;
    std::vector<NodeId> ain = xin;
    for (const auto& y : *Y2) {
        start.gens.push_back({embed(y.m, d), g.input()});
        ain.push_back(start.gens.back().w);
    }
    PrSource src(g, Xt, seeds());
    std::optional<StdGens> Y;
    bool hard_failure = false;
    try {
        Y = going_up(start, src, b3, &res.ascent);
    } catch (const SolveFailed&) {
        hard_failure = true;
    } catch (const EliminationResidue&) {
        hard_failure = true;
    }
    res.seconds.ascent += since(t0);
    if (!Y) return fail("ascent", !hard_failure && b3.exhausted());
    std::vector<NodeId> aout;
    for (const auto& y : Y->gens) aout.push_back(y.w);
    Mslp asc = compile_words(g, ain, aout);

    t0 = Clock::now();
    const int nx = int(X.size());
    if (d == 4) {
        std::vector<int> wiring = iota_slots(nx);
        for (int s : final_show_slots(base)) wiring.push_back(s);
        at.slp = compose(base, asc, wiring);
    } else {
        Mslp db = compose(desc, base, final_show_slots(desc));
        std::vector<int> wiring = iota_slots(nx);
        for (int s : final_show_slots(db)) wiring.push_back(s);
        at.slp = compose(db, asc, wiring);
    }
    res.seconds.compose += since(t0);
    at.L = Y->frame;
    at.outcome = Attempt::Outcome::Ok;
    return at;
}

}  // namespace

Budgets default_budgets(int d) {
    const long long l = 64LL * std::max(1, ceil_log2(d));
    return {l, 512, l};
}

bool verify_result(const std::vector<Matrix>& X, const Matrix& L, const Mslp& slp) {
    if (X.empty()) return false;
    const int d = X.front().rows();
    const FieldPtr F = X.front().field_ptr();
    if (L.rows() != d || L.cols() != d || rank(L) != d) return false;
    if (slp.ninputs() != int(X.size())) return false;
    std::vector<Matrix> init;
    for (const auto& x : X) init.push_back(conjugate(x, L));
    std::vector<Matrix> got;
    try {
        got = eval_last_show(slp, init);
    } catch (const Error&) {
        return false;
    }
    const auto want = standard_generators(F, d, d);
    if (got.size() != want.size()) return false;
    for (std::size_t k = 0; k < want.size(); ++k)
        if (!(got[k] == want[k])) return false;
    return true;
}

RecognitionResult recognize(const std::vector<Matrix>& X, const RecognitionOptions& opts) {
    if (X.empty()) throw EmptyGenerators("recognize needs generators");
    const int d = X.front().rows();
    if (d < 4) throw ShapeMismatch("recognition needs d >= 4");
    for (const auto& x : X)
        if (x.rows() != d || x.cols() != d) throw ShapeMismatch("generators must be square of one size");
    RecognitionResult res;
    Budget b1(opts.budgets.n1), b2(opts.budgets.n2), b3(opts.budgets.n3);
    std::mt19937_64 seeds(opts.seed);
    for (int a = 0; a < std::max(1, opts.attempts); ++a) {
        ++res.attempts;
        Attempt at = run_once(X, opts, seeds(), b1, b2, b3, res);
        res.used = {b1.used(), b2.used(), b3.used()};
        if (at.outcome != Attempt::Outcome::Ok) {
            res.failed_stage = at.stage;
            if (at.outcome == Attempt::Outcome::Exhausted) break;
            continue;
        }
        res.L = std::move(at.L);
        res.slp = std::move(at.slp);
        res.failed_stage.clear();
        if (!opts.verify) {
            res.ok = true;
            break;
        }
        auto t0 = Clock::now();
        res.verified = verify_result(X, res.L, res.slp);
        res.seconds.verify += since(t0);
        res.ok = res.verified;
        if (res.ok) break;
        res.failed_stage = "verify";
    }
    return res;
}

Matrix random_invertible(FieldPtr F, int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> u(0, F->q() - 1);
    while (true) {
        Matrix A(F, d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) A(i, j) = Elt(u(rng));
        if (rank(A) == d) return A;
    }
}

std::vector<Matrix> gen_instance(FieldPtr F, int d, std::uint64_t seed, Disguise disguise) {
    if (d < 2) throw ShapeMismatch("gen_instance needs d >= 2");
    auto S = standard_generators(F, d, d);
    if (disguise == Disguise::Identity) return S;
    std::mt19937_64 rng(seed);
    const Matrix A = random_invertible(F, d, rng);
    for (auto& s : S) s = conjugate(s, A);
    if (disguise == Disguise::Conjugate) return S;
    // Random words in S and their inverses; keep the first set that passes.
    std::vector<Matrix> Sinv;
    for (const auto& s : S) Sinv.push_back(inverse(s));
    std::uniform_int_distribution<std::size_t> pick(0, 2 * S.size() - 1);
    std::uniform_int_distribution<int> len(10, 20);
    std::uniform_int_distribution<int> count(2, 6);
    while (true) {
        std::vector<Matrix> out;
        const int k = count(rng);
        for (int i = 0; i < k; ++i) {
            Matrix w = Matrix::identity(F, d);
            for (int l = len(rng); l > 0; --l) {
                const std::size_t c = pick(rng);
                w = mul(w, c < S.size() ? S[c] : Sinv[c - S.size()]);
            }
            out.push_back(std::move(w));
        }
        Budget b(200);
        if (naming_check(out, b, rng())) return out;
    }
}

FieldPtr field_of_order(std::uint64_t q) {
    if (q < 2) throw NotPrime("field order must be at least 2");
    auto fs = factor_integer(q);
    if (fs.size() != 1) throw NotPrime("field order " + std::to_string(q) + " is not a prime power");
    return Field::make(std::uint32_t(fs[0].prime), std::uint32_t(fs[0].exponent));
}

std::vector<BenchRow> bench(const std::vector<std::pair<int, std::uint64_t>>& grid, int repeats, Budgets budgets,
                            std::uint64_t seed, bool verify) {
    std::vector<BenchRow> rows;
    for (auto [d, q] : grid) {
        const FieldPtr F = field_of_order(q);
        RecognitionOptions opts;
        opts.budgets = (budgets.n1 || budgets.n2 || budgets.n3) ? budgets : default_budgets(d);
        opts.verify = verify;
        std::vector<double> secs(std::size_t(std::max(0, repeats)));
        std::vector<long long> draws(secs.size());
        std::vector<char> good(secs.size());
        // Independent runs; each owns its graph and random source.
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < repeats; ++r) {
            const auto X = gen_instance(F, d, seed + std::uint64_t(r), Disguise::Conjugate);
            RecognitionOptions o = opts;
            o.seed = seed + std::uint64_t(r);
            auto t0 = Clock::now();
            auto res = recognize(X, o);
            secs[r] = since(t0);
            draws[r] = res.used.n1 + res.used.n2 + res.used.n3;
            good[r] = res.ok;
        }
        BenchRow row;
        row.d = d;
        row.q = q;
        row.repeats = repeats;
        if (repeats > 0) {
            row.successes = int(std::count(good.begin(), good.end(), 1));
            row.mean_seconds = std::accumulate(secs.begin(), secs.end(), 0.0) / repeats;
            std::vector<double> sorted = secs;
            std::sort(sorted.begin(), sorted.end());
            const std::size_t m = sorted.size() / 2;
            row.median_seconds = sorted.size() % 2 ? sorted[m] : (sorted[m - 1] + sorted[m]) / 2;
            row.mean_draws = double(std::accumulate(draws.begin(), draws.end(), 0LL)) / repeats;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "d,q,repeats,successes,success_rate,mean_seconds,median_seconds,mean_draws\n";
    os << std::setprecision(6);
    for (const auto& r : rows) {
        const double rate = r.repeats ? double(r.successes) / r.repeats : 0.0;
        os << r.d << ',' << r.q << ',' << r.repeats << ',' << r.successes << ',' << rate << ',' << r.mean_seconds
           << ',' << r.median_seconds << ',' << r.mean_draws << '\n';
    }
    return os.str();
}

}  // namespace slrec
