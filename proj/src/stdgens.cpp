#include "slrec/stdgens.hpp"

#include <deque>
#include <optional>

namespace slrec {

Matrix std_z1(FieldPtr F, int n, int d) {
    Matrix Z = Matrix::identity(F, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Z(i, j) = 0;
    Z(0, n - 1) = (n % 2 == 0) ? F->neg(1) : 1;
    for (int k = 1; k < n; ++k) Z(k, k - 1) = 1;
    return Z;
}

Matrix std_z2(FieldPtr F, int n, int d) {
    Matrix Z = Matrix::identity(F, d);
    if (n <= 2) return Z;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) Z(i, j) = 0;
    Z(1, n - 1) = (n % 2 == 1) ? F->neg(1) : 1;
    for (int k = 2; k < n; ++k) Z(k, k - 1) = 1;
    return Z;
}

std::vector<Matrix> standard_generators(FieldPtr F, int n, int d) {
    std::vector<Matrix> out;
    for (std::uint32_t k = 0; k < F->f(); ++k) out.push_back(Matrix::elementary(F, d, 0, 1, F->omega(k)));
    for (std::uint32_t k = 0; k < F->f(); ++k) out.push_back(Matrix::elementary(F, d, 1, 0, F->omega(k)));
    out.push_back(std_z1(F, n, d));
    out.push_back(std_z2(F, n, d));
    return out;
}

namespace {

// Signed permutation: e_i -> sign[i] e_{img[i]}.
struct SignedPerm {
    std::vector<int> img, sign;
};

SignedPerm signed_perm_of(int n, int which) {
    SignedPerm s{std::vector<int>(n), std::vector<int>(n, 1)};
    for (int i = 0; i < n; ++i) s.img[i] = i;
    if (which == 0) {  // z1
        s.img[0] = n - 1;
        s.sign[0] = (n % 2 == 0) ? -1 : 1;
        for (int k = 1; k < n; ++k) s.img[k] = k - 1;
    } else if (n > 2) {  // z2
        s.img[1] = n - 1;
        s.sign[1] = (n % 2 == 1) ? -1 : 1;
        for (int k = 2; k < n; ++k) s.img[k] = k - 1;
    }
    return s;
}

SignedPerm inverse_of(const SignedPerm& s) {
    SignedPerm r{std::vector<int>(s.img.size()), std::vector<int>(s.img.size())};
    for (std::size_t i = 0; i < s.img.size(); ++i) {
        r.img[s.img[i]] = int(i);
        r.sign[s.img[i]] = s.sign[i];
    }
    return r;
}

}  // namespace

Rewriter::Rewriter(WordGraph& g, std::vector<Tracked> gens, int n)
    : g_(&g), gens_(std::move(gens)), n_(n), f_(int(gens_.front().m.field().f())) {
    moves_.assign(std::size_t(n) * n, {});
    conj_.assign(moves_.size(), std::nullopt);
    conj_inv_.assign(moves_.size(), std::nullopt);
    movers_.assign(4, std::nullopt);
    std::vector<SignedPerm> perms;
    for (int w = 0; w < 2; ++w) {
        SignedPerm s = signed_perm_of(n, w);
        perms.push_back(s);
        perms.push_back(inverse_of(s));
    }
    // Breadth-first search over ordered pairs: conjugating E_{i,j}(mu) by a
    // signed permutation gives E_{s(i),s(j)}(sign_i sign_j mu).
    std::deque<int> queue{1};
    moves_[1].seen = true;
    while (!queue.empty()) {
        int p = queue.front();
        queue.pop_front();
        const int i = p / n, j = p % n;
        for (int via = 0; via < 4; ++via) {
            const auto& s = perms[via];
            int c = s.img[i] * n + s.img[j];
            if (moves_[c].seen) continue;
            moves_[c] = {p, via, moves_[p].sign * s.sign[i] * s.sign[j], true};
            queue.push_back(c);
        }
    }
}

const Tracked& Rewriter::mover(int via) {
    if (!movers_[via]) {
        const Tracked& z = gens_[std::size_t(2 * f_ + via / 2)];
        movers_[via] = (via % 2 == 0) ? z : tinv(*g_, z);
    }
    return *movers_[via];
}

const Tracked& Rewriter::conjugator(int pair) {
    if (!conj_[pair]) {
        const Move& mv = moves_[pair];
        if (mv.parent < 0) {
            const Tracked& z = gens_[std::size_t(2 * f_)];
            conj_[pair] = Tracked{Matrix::identity(z.m.field_ptr(), z.m.rows()), g_->identity_like(z.w)};
        } else {
            conj_[pair] = tmul(*g_, conjugator(mv.parent), mover(mv.via));
        }
    }
    return *conj_[pair];
}

const Tracked& Rewriter::conjugator_inverse(int pair) {
    if (!conj_inv_[pair]) conj_inv_[pair] = tinv(*g_, conjugator(pair));
    return *conj_inv_[pair];
}

Tracked Rewriter::e12(Elt mu) {
    const Field& F = gens_.front().m.field();
    auto c = F.coeffs(mu);
    std::optional<Tracked> acc;
    for (int k = 0; k < f_; ++k) {
        if (c[k] == 0) continue;
        Tracked t = tpow(*g_, gens_[k], c[k]);
        acc = acc ? tmul(*g_, *acc, t) : t;
    }
    if (!acc) {
        const Tracked& x = gens_.front();
        return {Matrix::identity(x.m.field_ptr(), x.m.rows()), g_->identity_like(x.w)};
    }
    return *acc;
}

Tracked Rewriter::transvection(int i, int j, Elt lambda) {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) throw Error("transvection: bad index pair");
    const Field& F = gens_.front().m.field();
    const int p = i * n_ + j;
    if (!moves_[p].seen) throw Error("transvection: pair unreachable");
    const Elt mu = moves_[p].sign < 0 ? F.neg(lambda) : lambda;
    if (p == 1) return e12(mu);
    if (mu == 0) return e12(0);
    return tmul(*g_, tmul(*g_, conjugator_inverse(p), e12(mu)), conjugator(p));
}

}  // namespace slrec
