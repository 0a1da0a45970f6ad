#include "slrec/descent.hpp"

#include <cmath>

#include "slrec/naming.hpp"

namespace slrec {

int log_star(double x) { return x <= 1 ? 0 : 1 + log_star(std::log2(x)); }

std::optional<ChainNode> combine_stingrays(const ChainNode& node, const StingrayCert& s1, const StingrayCert& s2) {
    const int d1 = node.degree;
    if (subspace_intersect(s1.body, s2.body).dim() != 0) return std::nullopt;
    const int d2 = s1.m + s2.m;
    if (d2 >= d1) return std::nullopt;
    Subspace common = subspace_intersect(s1.tail, s2.tail);
    Matrix Ln = vstack(vstack(s1.body.basis(), s2.body.basis()), common.basis());
    if (Ln.rows() != d1 || rank(Ln) != d1) return std::nullopt;
    const Matrix Lni = inverse(Ln);
    ChainNode next;
    next.degree = d2;
    for (const auto* s : {&s1, &s2}) {
        Matrix B = mul(mul(Ln, s->s.m), Lni);
        Matrix A = submatrix(B, 0, d2, 0, d2);
        if (!(embed(A, d1) == B)) return std::nullopt;  // must be exactly diag(A, I)
        next.gens.push_back({A, s->s.w});
    }
    const int d = node.L.rows();
    next.L = mul(embed(Ln, d), node.L);
    return next;
}

std::pair<int, int> descent_body_bounds(int d1) {
    auto [lo, hi] = stingray_degree_bounds(d1);
    // Where 4 ceil(log2 d1) >= d1 the degree bound forces nothing; go to 4 directly.
    if (4 * ceil_log2(d1) >= d1) hi = lo;
    return {lo, hi};
}

std::optional<ChainNode> going_down_basic_step(const ChainNode& node, PrSource& src, Budget& budget,
                                               Strategy strategy, std::mt19937_64& rng) {
    const int d1 = node.degree;
    auto [lo, hi] = descent_body_bounds(d1);
    while (!budget.exhausted()) {
        auto s1 = find_stingray_element(src, budget, lo, hi);
        if (!s1) return std::nullopt;
        const int hi2 = std::min(hi, d1 - 1 - s1->m);
        if (hi2 < lo) continue;
        for (int attempt = 0; attempt < 8; ++attempt) {
            auto s2 = find_stingray_element(src, budget, lo, hi2);
            if (!s2) return std::nullopt;
            auto next = combine_stingrays(node, *s1, *s2);
            if (!next) continue;
            if (strategy == Strategy::Naming &&
                !naming_check(next->gens[0].m, next->gens[1].m, budget, rng()))
                break;
            return next;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<ChainNode>> going_down(WordGraph& g, const std::vector<Tracked>& X, Budget& budget,
                                                 Strategy strategy, std::uint64_t seed, DescentStats* stats) {
    if (X.empty()) throw EmptyGenerators("descent needs generators");
    const int d = X.front().m.rows();
    std::mt19937_64 rng(seed);
    ChainNode root{d, X, Matrix::identity(X.front().m.field_ptr(), d)};
    std::vector<ChainNode> chain{root};
    const long long step_cap = std::max(1LL, budget.initial() / 4);
    while (chain.back().degree > 4) {
        if (budget.exhausted()) return std::nullopt;
        const ChainNode& node = chain.back();
        PrSource src(g, node.gens, rng());
        Budget step = budget.carve(step_cap);
        auto next = going_down_basic_step(node, src, step, strategy, rng);
        budget.settle(step);
        if (next) {
            chain.push_back(std::move(*next));
        } else {
            chain.assign(1, root);
            if (stats) ++stats->restarts;
        }
    }
    return chain;
}

}  // namespace slrec
