#include "slrec/basecase.hpp"

#include "slrec/stdgens.hpp"

namespace slrec {

u128 order_sl(int n, std::uint64_t q) {
    u128 r = 1;
    u128 qi = q;
    for (int i = 2; i <= n; ++i) {
        qi *= q;
        r *= qi - 1;
    }
    for (int i = 0; i < n * (n - 1) / 2; ++i) r *= q;
    return r;
}

StabChain::StabChain(WordGraph& g, const std::vector<Tracked>& gens) : g_(&g) {
    if (gens.empty()) throw EmptyGenerators("stabilizer chain needs generators");
    F_ = gens.front().m.field_ptr();
    if (gens.front().m.rows() != 4) throw ShapeMismatch("base case works in degree 4");
    one_ = {Matrix::identity(F_, 4), g.identity_like(gens.front().w)};
    for (int k = 0; k < 4; ++k) {
        std::vector<Elt> e(4, 0);
        e[k] = 1;
        if (k < 3) levels_.push_back({e, true, {}, {}});
        levels_.push_back({e, false, {}, {}});
    }
    for (auto& L : levels_) L.orbit.emplace(key(L.point), one_);
    levels_[0].gens = gens;
    extend_orbit(0, gens);
    // Lower levels start with trivial orbits until residues arrive.
}

std::uint64_t StabChain::key(const std::vector<Elt>& v) const {
    std::uint64_t k = 0;
    for (Elt x : v) k = k * F_->q() + x;
    return k;
}

std::vector<Elt> StabChain::image(const Level& L, const std::vector<Elt>& v, const Matrix& x) const {
    auto w = vec_mul(v, x);
    if (L.projective) {
        std::size_t i = 0;
        while (w[i] == 0) ++i;
        Elt inv = F_->inv(w[i]);
        for (auto& c : w) c = F_->mul(c, inv);
    }
    return w;
}

void StabChain::extend_orbit(std::size_t level, const std::vector<Tracked>& new_gens) {
    Level& L = levels_[level];
    // All generators acting on this level: those of this level and below it.
    std::vector<const Tracked*> all;
    for (std::size_t k = level; k < levels_.size(); ++k)
        for (const auto& t : levels_[k].gens) all.push_back(&t);
    // Apply the new generators to every known point, then close up under all.
    std::vector<std::vector<Elt>> frontier;
    std::vector<std::pair<std::vector<Elt>, const Tracked*>> known;
    for (auto& [k, u] : L.orbit) known.push_back({image(L, L.point, u.m), &u});
    std::vector<std::pair<std::vector<Elt>, Tracked>> fresh;
    for (auto& [pt, u] : known)
        for (const auto& s : new_gens) {
            auto img = image(L, pt, s.m);
            if (L.orbit.count(key(img))) continue;
            Tracked t = tmul(*g_, *u, s);
            L.orbit.emplace(key(img), t);
            frontier.push_back(img);
        }
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        const Tracked u = L.orbit.at(key(frontier[i]));
        for (const Tracked* s : all) {
            auto img = image(L, frontier[i], s->m);
            if (L.orbit.count(key(img))) continue;
            L.orbit.emplace(key(img), tmul(*g_, u, *s));
            frontier.push_back(img);
        }
    }
}

std::pair<std::size_t, Tracked> StabChain::strip(const Tracked& x) {
    Tracked r = x;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const Level& L = levels_[i];
        auto it = L.orbit.find(key(image(L, L.point, r.m)));
        if (it == L.orbit.end()) return {i, r};
        r = tmul(*g_, r, tinv(*g_, it->second));
    }
    return {levels_.size(), r};
}

bool StabChain::complete(PrSource& src, Budget& budget, int patience) {
    const u128 target = order_sl(4, F_->q());
    int quiet = 0;
    while (order() != target) {
        if (quiet >= patience) return false;
        Tracked x;
        try {
            x = src.next(budget);
        } catch (const BudgetExhausted&) {
            return false;
        }
        auto [lvl, res] = strip(x);
        if (lvl == levels_.size()) {
            ++quiet;
            continue;
        }
        quiet = 0;
        levels_[lvl].gens.push_back(res);
        for (std::size_t k = 0; k <= lvl; ++k) extend_orbit(k, {res});
    }
    return true;
}

std::optional<Tracked> StabChain::sift(const Matrix& x) {
    // x = u_k ... u_0 where u_i are the transversal elements met while stripping.
    Matrix r = x;
    std::vector<const Tracked*> used;
    for (const auto& L : levels_) {
        auto it = L.orbit.find(key(image(L, L.point, r)));
        if (it == L.orbit.end()) return std::nullopt;
        used.push_back(&it->second);
        r = mul(r, inverse(it->second.m));
    }
    if (!r.is_identity()) return std::nullopt;
    Tracked w = one_;
    for (auto it = used.rbegin(); it != used.rend(); ++it) w = tmul(*g_, w, **it);
    return w;
}

std::vector<std::size_t> StabChain::orbit_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& L : levels_) s.push_back(L.orbit.size());
    return s;
}

u128 StabChain::order() const {
    u128 r = 1;
    for (const auto& L : levels_) r *= L.orbit.size();
    return r;
}

std::optional<std::vector<Tracked>> recognize_base_case(WordGraph& g, const std::vector<Tracked>& U, Budget& budget,
                                                        std::uint64_t seed) {
    if (U.empty()) throw EmptyGenerators("base case needs generators");
    const FieldPtr F = U.front().m.field_ptr();
    StabChain chain(g, U);
    PrSource src(g, U, seed);
    if (!chain.complete(src, budget)) return std::nullopt;
    std::vector<Tracked> out;
    const auto targets = standard_generators(F, 2, 4);
    for (std::size_t k = 0; k < targets.size(); ++k) {
        if (targets[k].is_identity()) {
            out.push_back({targets[k], g.identity_like(U.front().w)});
            continue;
        }
        auto w = chain.sift(targets[k]);
        if (!w || !(w->m == targets[k])) return std::nullopt;
        out.push_back(*w);
    }
    return out;
}

}  // namespace slrec
