#include "doctest.h"

#include <random>

#include "slrec/ascent.hpp"
#include "slrec/recognize.hpp"
#include "slrec/stingray.hpp"

using namespace slrec;

namespace {

// A disguised copy X of SL(d,q) with frame L0 (L0 X L0^{-1} standard) and
// words for the SL(2,q) standard generators of the leading block.
struct Setup {
    WordGraph g;
    std::vector<Tracked> X;
    StdGens Y2;
};

void setup(Setup& s, FieldPtr F, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Matrix L0 = random_invertible(F, d, rng);
    const Matrix L0i = inverse(L0);
    const auto S = standard_generators(F, d, d);
    std::vector<Tracked> framed;
    for (const auto& m : S) {
        NodeId w = s.g.input();
        s.X.push_back({mul(mul(L0i, m), L0), w});
        framed.push_back({m, w});
    }
    Rewriter rw(s.g, framed, d);
    const std::size_t f = F->f();
    s.Y2.n = 2;
    s.Y2.frame = L0;
    for (std::size_t k = 0; k < f; ++k) s.Y2.gens.push_back(rw.transvection(0, 1, F->omega(k)));
    for (std::size_t k = 0; k < f; ++k) s.Y2.gens.push_back(rw.transvection(1, 0, F->omega(k)));
    const Elt m1 = F->neg(1);
    Tracked z1 = tmul(s.g, tmul(s.g, rw.transvection(0, 1, m1), rw.transvection(1, 0, 1)), rw.transvection(0, 1, m1));
    s.Y2.gens.push_back(z1);
    s.Y2.gens.push_back({Matrix::identity(F, d), s.g.identity_like(z1.w)});
}

}  // namespace

TEST_CASE("next degree doubles minus one and caps at d") {
    CHECK(next_degree(2, 10) == 3);
    CHECK(next_degree(3, 10) == 5);
    CHECK(next_degree(9, 10) == 10);
}

TEST_CASE("strong check on a hand-built inverse") {
    auto F = Field::make(5, 1);
    Matrix H = Matrix::identity(F, 6);
    // rows 3..4, columns 0..1 of rank 2
    H(3, 0) = 1;
    H(4, 1) = 2;
    CHECK(strong_check(H, 3, 5));
    H(4, 1) = 0;
    H(4, 0) = 3;
    CHECK_FALSE(strong_check(H, 3, 5));
}

TEST_CASE("ascent setup is standard in the given frame") {
    auto F = Field::make(3, 2);
    Setup s;
    setup(s, F, 7, 11);
    CHECK(is_standard(s.Y2));
}

TEST_CASE("one ascent step from SL(2) to SL(3)") {
    for (auto [p, f] : {std::pair{5u, 1u}, {2u, 2u}, {3u, 2u}}) {
        auto F = Field::make(p, f);
        Setup s;
        setup(s, F, 8, 100 + p * 10 + f);
        PrSource src(s.g, s.X, 7);
        Budget b(2000);
        AscentStats st;
        auto Y3 = going_up_step(s.Y2, src, b, &st);
        REQUIRE(Y3);
        CHECK(Y3->n == 3);
        CHECK(is_standard(*Y3));
        CHECK(st.steps == 1);
    }
}

TEST_CASE("full ascent matches words and frame") {
    struct Case {
        std::uint32_t p, f;
        int d;
    };
    for (auto c : {Case{5, 1, 10}, Case{2, 1, 9}, Case{2, 3, 6}, Case{7, 1, 12}, Case{3, 1, 5}}) {
        CAPTURE(c.p);
        CAPTURE(c.d);
        auto F = Field::make(c.p, c.f);
        Setup s;
        setup(s, F, c.d, 7 * c.p + c.d);
        PrSource src(s.g, s.X, 3);
        Budget b(64LL * 4 * ceil_log2(c.d));
        AscentStats st;
        auto Y = going_up(s.Y2, src, b, &st);
        REQUIRE(Y);
        CHECK(Y->n == c.d);
        CHECK(is_standard(*Y));
        // Evaluate the words on the original inputs and compare with L^{-1} S L.
        std::vector<NodeId> ins, outs;
        std::vector<Matrix> init;
        for (auto& x : s.X) {
            ins.push_back(x.w);
            init.push_back(x.m);
        }
        for (auto& y : Y->gens) outs.push_back(y.w);
        auto prog = compile_words(s.g, ins, outs);
        auto vals = eval_last_show(prog, init);
        const auto want = standard_generators(F, c.d, c.d);
        const Matrix Li = inverse(Y->frame);
        REQUIRE(vals.size() == want.size());
        for (std::size_t k = 0; k < want.size(); ++k) CHECK(mul(mul(Y->frame, vals[k]), Li) == want[k]);
    }
}

TEST_CASE("even degrees above two are rejected") {
    auto F = Field::make(5, 1);
    Setup s;
    setup(s, F, 6, 1);
    StdGens Y = s.Y2;
    Y.n = 4;
    PrSource src(s.g, s.X, 1);
    Budget b(10);
    CHECK_THROWS_AS(going_up_step(Y, src, b), UnsupportedDegreeParity);
}

TEST_CASE("standard cycles") {
    auto F = Field::make(5, 1);
    const Elt m1 = F->neg(1);
    CHECK(std_z1(F, 4, 4) == Matrix::from_rows(F, {{0, 0, 0, m1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}));
    CHECK(std_z1(F, 3, 3) == Matrix::from_rows(F, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
    CHECK(std_z2(F, 3, 3) == Matrix::from_rows(F, {{1, 0, 0}, {0, 0, m1}, {0, 1, 0}}));
    CHECK(std_z2(F, 4, 4) == Matrix::from_rows(F, {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}}));
    CHECK(std_z2(F, 2, 2).is_identity());
    for (std::uint32_t q : {2u, 3u, 4u, 9u}) {
        auto G = field_of_order(q);
        for (int n = 2; n <= 9; ++n) {
            const auto S = standard_generators(G, n, n + 2);
            CHECK(S.size() == 2 * G->f() + 2);
            for (const auto& s : S) CHECK(det(s) == 1);
            // Embedded: identity outside the leading n x n block.
            for (const auto& s : S) CHECK(embed(submatrix(s, 0, n, 0, n), n + 2) == s);
        }
    }
}

TEST_CASE("rewritten transvections evaluate exactly") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
        auto F = field_of_order(q);
        const int f = int(F->f());
        for (int n = 2; n <= 8; ++n) {
            WordGraph g;
            const auto S = standard_generators(F, n, n);
            std::vector<Tracked> gens;
            std::vector<NodeId> ins;
            for (const auto& s : S) {
                gens.push_back({s, g.input()});
                ins.push_back(gens.back().w);
            }
            Rewriter rw(g, gens, n);
            std::vector<NodeId> outs;
            std::vector<Matrix> want;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    for (Elt lam : {F->omega(0), F->omega(std::size_t(f - 1)), F->neg(1)}) {
                        const Tracked t = rw.transvection(i, j, lam);
                        want.push_back(Matrix::elementary(F, n, i, j, lam));
                        CHECK(t.m == want.back());
                        outs.push_back(t.w);
                    }
                }
            // The words themselves, evaluated from scratch.
            const auto vals = eval_last_show(compile_words(g, ins, outs), S);
            REQUIRE(vals.size() == want.size());
            for (std::size_t k = 0; k < want.size(); ++k) CHECK(vals[k] == want[k]);
        }
    }
}

TEST_CASE("single steps from planted standard generators") {
    // Y for degree n is planted as fresh inputs with the standard matrices.
    int runs = 0, good = 0;
    for (int d : {7, 10}) {
        for (std::uint32_t q : {3u, 4u}) {
            for (int n : {2, 3, 5}) {
                if (n >= d) continue;
                auto F = field_of_order(q);
                for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                    std::mt19937_64 rng(seed * 1000 + std::uint64_t(d * 10 + n));
                    const Matrix L0 = random_invertible(F, d, rng);
                    WordGraph g;
                    std::vector<Tracked> X;
                    for (const auto& m : standard_generators(F, d, d)) X.push_back({conjugate(m, inverse(L0)), g.input()});
                    StdGens Y;
                    Y.n = n;
                    Y.frame = L0;
                    for (const auto& m : standard_generators(F, n, d)) Y.gens.push_back({m, g.input()});
                    PrSource src(g, X, seed);
                    Budget b(256);
                    ++runs;
                    auto out = going_up_step(Y, src, b);
                    if (!out) continue;
                    ++good;
                    CHECK(out->n == next_degree(n, d));
                    CHECK(is_standard(*out));
                    // Old block generators keep their words.
                    for (std::size_t k = 0; k < 2 * F->f(); ++k) CHECK(out->gens[k].w == Y.gens[k].w);
                }
            }
        }
    }
    CHECK(good >= runs - 1);
}
