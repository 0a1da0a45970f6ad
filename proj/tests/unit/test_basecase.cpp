#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "slrec/basecase.hpp"
#include "slrec/recognize.hpp"
#include "slrec/stdgens.hpp"

using namespace slrec;
using namespace testing_helpers;

namespace {

// |SL(2,q)| by enumerating all 2x2 matrices of determinant 1.
std::uint64_t count_sl2(FieldPtr F) {
    const Elt q = Elt(F->q());
    std::uint64_t n = 0;
    for (Elt a = 0; a < q; ++a)
        for (Elt b = 0; b < q; ++b)
            for (Elt c = 0; c < q; ++c)
                for (Elt d = 0; d < q; ++d)
                    if (F->sub(F->mul(a, d), F->mul(b, c)) == 1) ++n;
    return n;
}

// Symplectic transvection x -> x + lambda (x J v^T) v for the form J with
// J(0,3) = J(1,2) = 1, J(2,1) = J(3,0) = -1.
Matrix symplectic_transvection(FieldPtr F, const std::vector<Elt>& v, Elt lambda) {
    Matrix J(F, 4, 4);
    J(0, 3) = 1;
    J(1, 2) = 1;
    J(2, 1) = F->neg(1);
    J(3, 0) = F->neg(1);
    Matrix col(F, 4, 1), row(F, 1, 4);
    for (int i = 0; i < 4; ++i) row(0, i) = v[i];
    const Matrix Jv = mul(J, transpose(row));
    for (int i = 0; i < 4; ++i) col(i, 0) = Jv(i, 0);
    return add(Matrix::identity(F, 4), scale(mul(col, row), lambda));
}

std::vector<Tracked> track(WordGraph& g, const std::vector<Matrix>& X) {
    std::vector<Tracked> out;
    for (const auto& x : X) out.push_back({x, g.input()});
    return out;
}

}  // namespace

TEST_CASE("orders of special linear groups") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 9u}) {
        auto F = field_of_order(q);
        CHECK(order_sl(2, q) == count_sl2(F));
    }
    CHECK(order_sl(4, 2) == 20160);
    CHECK(order_sl(3, 2) == 168);
    CHECK(order_sl(4, 3) == u128(12130560));
}

TEST_CASE("stabiliser chain of SL(4,q) reaches the full order and sifts") {
    for (std::uint32_t q : {2u, 3u, 4u}) {
        auto F = field_of_order(q);
        const auto X = gen_instance(F, 4, q, Disguise::Conjugate);
        WordGraph g;
        auto Xt = track(g, X);
        StabChain chain(g, Xt);
        PrSource src(g, Xt, 2);
        Budget b(512);
        REQUIRE(chain.complete(src, b));
        CHECK(chain.order() == order_sl(4, q));
        // Orbit lengths for the base (P(e1), e1, P(e2), e2, P(e3), e3, e4).
        const u128 Q = q;
        const auto sizes = chain.orbit_sizes();
        REQUIRE(sizes.size() == 7);
        CHECK(sizes[0] == (Q * Q * Q * Q - 1) / (Q - 1));
        CHECK(sizes[1] == Q - 1);
        CHECK(sizes[2] == (Q * Q * Q * Q - Q) / (Q - 1));
        // Sifting random elements gives words for them.
        std::vector<NodeId> ins;
        for (auto& x : Xt) ins.push_back(x.w);
        PrSource other(g, Xt, 99);
        Budget b2(10);
        for (int k = 0; k < 10; ++k) {
            const Matrix x = other.next(b2).m;
            auto w = chain.sift(x);
            REQUIRE(w);
            CHECK(w->m == x);
            CHECK(eval_last_show(compile_words(g, ins, {w->w}), X).at(0) == x);
        }
    }
}

TEST_CASE("base case words for SL(2,q) inside conjugated SL(4,q)") {
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 9u}) {
        auto F = field_of_order(q);
        const auto want = standard_generators(F, 2, 4);
        int ok = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            // A conjugate of SL(4,q) is SL(4,q) itself, so the targets are
            // the standard matrices in the given coordinates.
            const auto X = gen_instance(F, 4, seed * 31 + q, Disguise::Conjugate);
            WordGraph g;
            auto Xt = track(g, X);
            Budget b(512);
            auto Y = recognize_base_case(g, Xt, b, seed);
            if (!Y) continue;
            ++ok;
            std::vector<NodeId> ins, outs;
            for (auto& x : Xt) ins.push_back(x.w);
            for (auto& y : *Y) outs.push_back(y.w);
            const auto vals = eval_last_show(compile_words(g, ins, outs), X);
            REQUIRE(vals.size() == want.size());
            for (std::size_t k = 0; k < want.size(); ++k) CHECK(vals[k] == want[k]);
        }
        CHECK(ok == 10);
    }
}

TEST_CASE("base case on a disguised generating set") {
    auto F = field_of_order(5);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto X = gen_instance(F, 4, seed, Disguise::Products);
        WordGraph g;
        auto Xt = track(g, X);
        Budget b(512);
        auto Y = recognize_base_case(g, Xt, b, seed);
        REQUIRE(Y);
        const auto want = standard_generators(F, 2, 4);
        for (std::size_t k = 0; k < want.size(); ++k) CHECK((*Y)[k].m == want[k]);
    }
}

TEST_CASE("Sp(4,3) is not taken for SL(4,3)") {
    auto F = Field::make(3, 1);
    std::mt19937_64 rng(4);
    std::vector<Matrix> gens;
    while (gens.size() < 4) {
        std::vector<Elt> v(4);
        for (auto& x : v) x = Elt(rng() % 3);
        if (all_zero(v)) continue;
        gens.push_back(symplectic_transvection(F, v, 1));
    }
    // All generators preserve the form, so the group is at most Sp(4,3).
    const Matrix L = random_invertible(F, 4, rng);
    for (auto& x : gens) x = conjugate(x, L);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        WordGraph g;
        auto Xt = track(g, gens);
        Budget b(512);
        CHECK_FALSE(recognize_base_case(g, Xt, b, seed));
    }
    RecognitionOptions opts;
    opts.budgets = default_budgets(4);
    opts.seed = 3;
    const auto res = recognize(gens, opts);
    CHECK_FALSE(res.ok);
    CHECK_FALSE(res.verified);
    CHECK(res.failed_stage == "basecase");
}
