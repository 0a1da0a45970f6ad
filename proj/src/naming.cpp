#include "slrec/naming.hpp"

#include <set>

#include "slrec/stingray.hpp"

namespace slrec {

namespace {

// Incremental echelon form for spinning.
struct Echelon {
    const Field* F;
    int n;
    std::vector<std::vector<Elt>> rows;
    std::vector<int> piv;

    // Reduces v; returns true and stores it if it was independent.
    bool insert(std::vector<Elt> v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            Elt c = v[piv[r]];
            if (c == 0) continue;
            for (int k = 0; k < n; ++k)
                if (rows[r][k]) v[k] = F->sub(v[k], F->mul(c, rows[r][k]));
        }
        int p = 0;
        while (p < n && v[p] == 0) ++p;
        if (p == n) return false;
        Elt inv = F->inv(v[p]);
        for (auto& x : v) x = F->mul(x, inv);
        rows.push_back(std::move(v));
        piv.push_back(p);
        return true;
    }
};

}  // namespace

int spin_dimension(const std::vector<Elt>& v, const std::vector<Matrix>& gens) {
    const Field& F = gens.front().field();
    const int n = gens.front().rows();
    Echelon E{&F, n, {}, {}};
    std::vector<std::vector<Elt>> queue;
    if (E.insert(v)) queue.push_back(v);
    for (std::size_t i = 0; i < queue.size() && int(E.rows.size()) < n; ++i)
        for (const auto& g : gens) {
            auto w = vec_mul(queue[i], g);
            if (E.insert(w)) queue.push_back(w);
        }
    return static_cast<int>(E.rows.size());
}

bool irreducible_group(const std::vector<Matrix>& gens, std::mt19937_64& rng, int tries) {
    const auto& Fp = gens.front().field_ptr();
    const Field& F = *Fp;
    const int n = gens.front().rows();
    std::vector<Matrix> tgens;
    for (const auto& g : gens) tgens.push_back(transpose(g));
    // A pool of algebra elements built from products and sums.
    std::vector<Matrix> pool = gens;
    for (int t = 0; t < tries; ++t) {
        const Matrix& x = pool[rng() % pool.size()];
        const Matrix& y = pool[rng() % pool.size()];
        pool.push_back(rng() & 1 ? mul(x, y) : add(x, y));
        if (pool.size() > 12) pool.erase(pool.begin() + long(gens.size()));
        Matrix theta = Matrix::zero(Fp, n, n);
        for (const auto& m : pool) theta = add(theta, scale(m, Elt(rng() % F.q())));
        FactorProfile prof = poly_factor(F, charpoly(theta));
        for (const auto& [P, c] : prof.factors) {
            Matrix PT = poly_eval(theta, P);
            auto [im, ker] = image_and_kernel(PT);
            if (ker.dim() == 0) continue;
            if (spin_dimension(ker.basis().row_vec(0), gens) < n) return false;
            auto [im2, ker2] = image_and_kernel(transpose(PT));
            if (spin_dimension(ker2.basis().row_vec(0), tgens) < n) return false;
            if (ker.dim() == poly::deg(P)) return true;
        }
    }
    return false;
}

bool naming_check(const Matrix& a, const Matrix& b, Budget& budget, std::uint64_t seed, int max_draws) {
    return naming_check(std::vector<Matrix>{a, b}, budget, seed, max_draws);
}

bool naming_check(const std::vector<Matrix>& gens, Budget& budget, std::uint64_t seed, int max_draws) {
    if (gens.empty()) throw EmptyGenerators("naming check needs generators");
    const Field& F = gens.front().field();
    const int n = gens.front().rows();
    std::mt19937_64 rng(seed);
    if (!irreducible_group(gens, rng)) return false;

    // Degrees e in (n/2, n] for which a ppd of q^e - 1 exists.
    std::set<int> feasible;
    for (int e = n / 2 + 1; e <= n; ++e) {
        try {
            if (ppd_phi(e, F) > 1) feasible.insert(e);
        } catch (const FactorizationTooLarge&) {
        }
    }
    const bool small_ok = !feasible.empty() && *feasible.begin() <= n - 1;
    if (!small_ok || feasible.size() < 2) return true;

    WordGraph g;
    std::vector<Tracked> tracked;
    for (const auto& m : gens) tracked.push_back({m, g.input()});
    PrSource src(g, std::move(tracked), seed ^ 0x9e3779b97f4a7c15ULL);
    std::set<int> found;
    for (int k = 0; k < max_draws; ++k) {
        Tracked x;
        try {
            x = src.next(budget);
        } catch (const BudgetExhausted&) {
            return false;
        }
        FactorProfile prof = poly_factor(F, charpoly(x.m));
        for (const auto& [P, c] : prof.factors) {
            const int e = poly::deg(P);
            if (!feasible.count(e) || found.count(e)) continue;
            if (ppd_witness(F, P)) found.insert(e);
        }
        // Two distinct degrees in (n/2, n]: at least one is below n.
        if (found.size() >= 2) return true;
    }
    return false;
}

}  // namespace slrec
