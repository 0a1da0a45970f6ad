#include "slrec/ascent.hpp"

#include <algorithm>

#include "slrec/stingray.hpp"

namespace slrec {

bool is_standard(const StdGens& Y) {
    const auto& m0 = Y.gens.front().m;
    auto want = standard_generators(m0.field_ptr(), Y.n, m0.rows());
    if (want.size() != Y.gens.size()) return false;
    for (std::size_t k = 0; k < want.size(); ++k)
        if (!(Y.gens[k].m == want[k])) return false;
    return true;
}

int next_degree(int n, int d) { return std::min(2 * n - 1, d); }

Tracked choose_t(Rewriter& rw, const StdGens& Y) {
    const Field& F = Y.gens.front().m.field();
    const std::size_t f = F.f();
    if (Y.n == 2) return rw.transvection(0, 1, 1);
    if (Y.n % 2 == 0) throw UnsupportedDegreeParity("ascent needs n = 2 or n odd, got " + std::to_string(Y.n));
    return F.p() == 2 ? Y.gens[2 * f] : Y.gens[2 * f + 1];
}

namespace {

Tracked one_like(WordGraph& g, const Tracked& x) {
    return {Matrix::identity(x.m.field_ptr(), x.m.rows()), g.identity_like(x.w)};
}

Tracked product(WordGraph& g, const std::vector<Tracked>& xs, const Tracked& fallback) {
    if (xs.empty()) return one_like(g, fallback);
    Tracked r = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) r = tmul(g, r, xs[i]);
    return r;
}

}  // namespace

std::optional<Tracked> compute_doubling_element(Rewriter& rw, const StdGens& Y, const Tracked& t, PrSource& src,
                                                Budget& budget) {
    WordGraph& g = src.graph();
    const int n = Y.n;
    const int d = t.m.rows();
    const int np = next_degree(n, d);
    const FieldPtr Fp = t.m.field_ptr();
    const Field& F = *Fp;
    const Matrix I = Matrix::identity(Fp, d);
    const Matrix Finv = inverse(Y.frame);
    while (true) {
        Tracked E;
        try {
            E = src.next(budget);
        } catch (const BudgetExhausted&) {
            return std::nullopt;
        }
        const Tracked Ef{mul(mul(Y.frame, E.m), Finv), E.w};
        const Tracked T = tmul(g, tmul(g, tinv(g, Ef), t), Ef);
        // dim(V_n + V_n T) = n'.
        if (rank(submatrix(T.m, 0, n, n, d)) != np - n) continue;
        auto fix = image_and_kernel(sub(T.m, I)).second;
        // dim(F_{d-n} + Fix(T)) = d.
        if (np < d && rank(submatrix(fix.basis(), 0, fix.dim(), 0, n)) != n) continue;
        // v in V_n with v T = v.
        auto vn = image_and_kernel(submatrix(sub(T.m, I), 0, n, 0, d)).second;
        if (vn.dim() == 0) continue;
        std::vector<Elt> lam = vn.basis().row_vec(0);
        // L in the block with v_n L = v.
        std::vector<Tracked> parts;
        const int c = n - 1;
        if (lam[c] != 0) {
            const Elt s = F.inv(lam[c]);
            for (auto& x : lam) x = F.mul(x, s);
            for (int j = 0; j < c; ++j)
                if (lam[j] != 0) parts.push_back(rw.transvection(c, j, lam[j]));
        } else {
            int j = 0;
            while (lam[j] == 0) ++j;
            const Elt s = F.inv(lam[j]);
            for (auto& x : lam) x = F.mul(x, s);
            parts.push_back(rw.transvection(c, j, 1));
            parts.push_back(rw.transvection(j, c, F.neg(1)));
            for (int k = 0; k < n; ++k)
                if (k != j && lam[k] != 0) parts.push_back(rw.transvection(j, k, lam[k]));
        }
        const Tracked L = product(g, parts, t);
        const Tracked M = tmul(g, tmul(g, L, T), tinv(g, L));
        std::vector<Elt> en(d, 0);
        en[c] = 1;
        if (vec_mul(en, M.m) != en) throw Error("doubling element does not fix v_n");
        return M;
    }
}

std::optional<BaseChange> build_base_change(const Matrix& M, int n, int nprime) {
    const FieldPtr Fp = M.field_ptr();
    const int d = M.rows();
    BaseChange bc;
    Matrix L(Fp, d, d);
    for (int i = 0; i < n; ++i) L(i, i) = 1;
    Subspace chosen = Subspace::zero(Fp, d);
    int row = n;
    for (int j = 0; j < n - 1 && row < nprime; ++j) {
        std::vector<Elt> v(M.row(j), M.row(j) + d);
        std::fill(v.begin(), v.begin() + n, 0);
        Matrix vm = Matrix::from_rows(Fp, {v});
        Subspace grown = subspace_sum(chosen, Subspace::span(vm));
        if (grown.dim() == chosen.dim()) {
            if (nprime < d) return std::nullopt;  // all n - 1 images must be independent
            continue;
        }
        chosen = grown;
        std::copy(v.begin(), v.end(), L.row(row++));
        bc.sources.push_back(j);
    }
    if (row != nprime) return std::nullopt;
    if (nprime < d) {
        Matrix tailrows(Fp, d - n, d);
        for (int k = n; k < d; ++k) tailrows(k - n, k) = 1;
        auto fix = image_and_kernel(sub(M, Matrix::identity(Fp, d))).second;
        Subspace rest = subspace_intersect(Subspace::span(tailrows), fix);
        if (rest.dim() != d - nprime) return std::nullopt;
        for (int k = 0; k < rest.dim(); ++k) std::copy(rest.basis().row(k), rest.basis().row(k) + d, L.row(row++));
    }
    if (rank(L) != d) return std::nullopt;
    bc.L = std::move(L);
    return bc;
}

bool strong_check(const Matrix& Hinv, int n, int nprime) {
    if (n < 2 || nprime <= n) return false;
    return rank(submatrix(Hinv, n, nprime, 0, n - 1)) == nprime - n;
}

std::optional<Vertical> vertical_transvections(Rewriter& rw, const Tracked& H, const Tracked& Hinv, int n,
                                               int nprime) {
    WordGraph& g = rw.graph();
    const FieldPtr Fp = H.m.field_ptr();
    const Field& F = *Fp;
    const int f = int(F.f());
    const int d = H.m.rows();
    const int c = n - 1;
    const int width = nprime - n;
    auto Fprime = Field::make(F.p(), 1);
    // a_{j,l} = E_{j,c}(w_l)^H with its part inside the block cleared.
    std::vector<Tracked> a;
    Matrix coords(Fprime, (n - 1) * f, width * f);
    for (int j = 0; j < n - 1; ++j)
        for (int l = 0; l < f; ++l) {
            const Elt w = F.omega(l);
            Tracked x = tmul(g, tmul(g, Hinv, rw.transvection(j, c, w)), H);
            for (int k = 0; k < n - 1; ++k) {
                const Elt e = F.mul(w, Hinv.m(k, j));
                if (e != 0) x = tmul(g, rw.transvection(k, c, F.neg(e)), x);
            }
            // Expect I plus column c supported on rows n..n'-1.
            Matrix expect = Matrix::identity(Fp, d);
            for (int k = n; k < nprime; ++k) expect(k, c) = F.mul(w, Hinv.m(k, j));
            if (!(x.m == expect)) return std::nullopt;
            const int r = j * f + l;
            for (int k = n; k < nprime; ++k) {
                auto cf = F.coeffs(x.m(k, c));
                for (int t = 0; t < f; ++t) coords(r, (k - n) * f + t) = cf[t];
            }
            a.push_back(std::move(x));
        }
    Matrix targets(Fprime, width * f, width * f);
    for (int i = 0; i < width * f; ++i) targets(i, i) = 1;
    auto sol = solve_left(coords, targets);
    if (!sol) throw SolveFailed("vertical transvections are not in the span");
    Vertical out(width);
    for (int k = n; k < nprime; ++k)
        for (int l = 0; l < f; ++l) {
            const int row = (k - n) * f + l;
            std::vector<Tracked> parts;
            for (int r = 0; r < sol->cols(); ++r)
                if ((*sol)(row, r) != 0) parts.push_back(tpow(g, a[r], (*sol)(row, r)));
            Tracked e = product(g, parts, H);
            if (!(e.m == Matrix::elementary(Fp, d, k, c, F.omega(l)))) return std::nullopt;
            out[k - n].push_back(std::move(e));
        }
    return out;
}

namespace {

// E_{k,c}(lambda) for n <= k < n' from the w_l-components.
Tracked vertical_with(WordGraph& g, const Field& F, const Vertical& vert, int k, int n, Elt lambda) {
    auto cf = F.coeffs(lambda);
    std::vector<Tracked> parts;
    for (std::size_t l = 0; l < cf.size(); ++l)
        if (cf[l]) parts.push_back(tpow(g, vert[k - n][l], cf[l]));
    return product(g, parts, vert[k - n][0]);
}

}  // namespace

std::optional<std::vector<Tracked>> horizontal_transvections(Rewriter& rw, const Tracked& H, const Tracked& Hinv,
                                                             const Vertical& vert, const std::vector<int>& sources,
                                                             int n, int nprime) {
    WordGraph& g = rw.graph();
    const FieldPtr Fp = H.m.field_ptr();
    const Field& F = *Fp;
    const int d = H.m.rows();
    const int c = n - 1;
    // g0 = prod_{k != c} E_{k,c}(u_k) with u = column c of H^{-1}; conjugating
    // E_{c,j}(1)^H by g0 moves it into row c.
    std::vector<Tracked> parts;
    for (int k = 0; k < nprime; ++k) {
        const Elt u = Hinv.m(k, c);
        if (k == c || u == 0) continue;
        parts.push_back(k < c ? rw.transvection(k, c, u) : vertical_with(g, F, vert, k, n, u));
    }
    const Tracked g0 = product(g, parts, H);
    const Tracked g0i = tinv(g, g0);
    std::vector<Tracked> out(nprime - n);
    for (std::size_t idx = 0; idx < sources.size(); ++idx) {
        const int j = sources[idx];
        Tracked x = tmul(g, tmul(g, Hinv, rw.transvection(c, j, 1)), H);
        x = tmul(g, tmul(g, g0i, x), g0);
        for (int k = 0; k < c; ++k) {
            const Elt w = H.m(j, k);
            if (w != 0) x = tmul(g, x, rw.transvection(c, k, F.neg(w)));
        }
        if (!(x.m == Matrix::elementary(Fp, d, c, n + int(idx), 1)))
            throw EliminationResidue("row " + std::to_string(c) + " target " + std::to_string(n + idx));
        out[idx] = std::move(x);
    }
    return out;
}

std::pair<Tracked, Tracked> assemble_cycles(WordGraph& g, const StdGens& Y, const Vertical& vert,
                                            const std::vector<Tracked>& horiz, int nprime) {
    const int n = Y.n;
    const std::size_t f = Y.gens.front().m.field().f();
    // Transposition (c, i) with alternating sign placement so that the
    // product below has sign +1 on v_{n+1..n'}.
    auto tau = [&](int i) {
        const Tracked& Ein = vert[i - n][0];
        const Tracked& Eni = horiz[i - n];
        const bool odd = (i - (n - 1)) % 2 == 1;
        if (odd) return tmul(g, tmul(g, Ein, tinv(g, Eni)), Ein);
        const Tracked Einv = tinv(g, Ein);
        return tmul(g, tmul(g, Einv, Eni), Einv);
    };
    Tracked cyc = tau(nprime - 1);
    for (int i = nprime - 2; i >= n; --i) cyc = tmul(g, cyc, tau(i));
    return {tmul(g, Y.gens[2 * f], cyc), tmul(g, Y.gens[2 * f + 1], cyc)};
}

std::optional<StdGens> going_up_step(const StdGens& Y, PrSource& src, Budget& budget, AscentStats* stats) {
    WordGraph& g = src.graph();
    const int n = Y.n;
    const int d = Y.frame.rows();
    if (n >= d) return Y;
    if (n != 2 && n % 2 == 0) throw UnsupportedDegreeParity("ascent needs n = 2 or n odd, got " + std::to_string(n));
    const int np = next_degree(n, d);
    Rewriter rw(g, Y.gens, n);
    const Tracked t = choose_t(rw, Y);
    while (true) {
        auto M = compute_doubling_element(rw, Y, t, src, budget);
        if (!M) return std::nullopt;
        auto bc = build_base_change(M->m, n, np);
        if (!bc) {
            if (stats) ++stats->weak_rejections;
            continue;
        }
        const Matrix Li = inverse(bc->L);
        const Tracked H{mul(mul(bc->L, M->m), Li), M->w};
        if (!(embed(submatrix(H.m, 0, np, 0, np), d) == H.m)) {
            if (stats) ++stats->weak_rejections;
            continue;
        }
        const Tracked Hinv = tinv(g, H);
        if (!strong_check(Hinv.m, n, np)) {
            if (stats) ++stats->strong_rejections;
            continue;
        }
        // The block generators are unchanged by the new frame: L = diag(I_n, K).
        auto vert = vertical_transvections(rw, H, Hinv, n, np);
        if (!vert) continue;
        auto horiz = horizontal_transvections(rw, H, Hinv, *vert, bc->sources, n, np);
        if (!horiz) continue;
        auto [z1, z2] = assemble_cycles(g, Y, *vert, *horiz, np);
        StdGens out;
        out.n = np;
        out.frame = mul(bc->L, Y.frame);
        const std::size_t f = Y.gens.front().m.field().f();
        out.gens.assign(Y.gens.begin(), Y.gens.begin() + long(2 * f));
        out.gens.push_back(std::move(z1));
        out.gens.push_back(std::move(z2));
        if (!is_standard(out)) throw Error("ascent step produced non-standard generators");
        if (stats) ++stats->steps;
        return out;
    }
}

std::optional<StdGens> going_up(const StdGens& Y2, PrSource& src, Budget& budget, AscentStats* stats) {
    const int d = Y2.frame.rows();
    const long long cap = std::max(1LL, budget.initial() / std::max(1, ceil_log2(d)));
    StdGens Y = Y2;
    while (Y.n < d) {
        Budget step = budget.carve(cap);
        auto next = going_up_step(Y, src, step, stats);
        budget.settle(step);
        if (!next) return std::nullopt;
        Y = std::move(*next);
    }
    return Y;
}

}  // namespace slrec
