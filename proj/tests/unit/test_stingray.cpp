#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "slrec/recognize.hpp"
#include "slrec/stingray.hpp"

using namespace slrec;
using namespace testing_helpers;

namespace {

// Multiplicative order of an invertible matrix by repeated multiplication.
std::uint64_t brute_order(const Matrix& A, std::uint64_t cap) {
    Matrix P = A;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (P.is_identity()) return k;
        P = mul(P, A);
    }
    return 0;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// r is a primitive prime divisor of q^m - 1.
bool is_ppd(std::uint64_t r, std::uint64_t q, int m) {
    if ((ipow(q, m) - 1) % r) return false;
    for (int i = 1; i < m; ++i)
        if ((ipow(q, i) - 1) % r == 0) return false;
    return true;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

// Invariants of a certificate, checked from scratch.
void check_cert(const StingrayCert& c, int lo, int hi) {
    const Matrix& s = c.s.m;
    const int d = s.rows();
    const Matrix I = Matrix::identity(s.field_ptr(), d);
    CHECK(c.m >= lo);
    CHECK(c.m <= hi);
    CHECK(rank(sub(s, I)) == c.m);
    CHECK(c.body.dim() + c.tail.dim() == d);
    CHECK(subspace_intersect(c.body, c.tail).dim() == 0);
    for (int i = 0; i < c.tail.dim(); ++i) {
        auto v = c.tail.basis().row_vec(i);
        CHECK(vec_mul(v, s) == v);
    }
    for (int i = 0; i < c.body.dim(); ++i) CHECK(c.body.contains_vector(vec_mul(c.body.basis().row_vec(i), s)));
    const Poly chi = charpoly(restrict_to(s, c.body));
    CHECK(int(poly::deg(chi)) == c.m);
    CHECK(poly::is_irreducible(s.field(), chi));
}

}  // namespace

TEST_CASE("degree window") {
    CHECK(stingray_degree_bounds(4) == std::pair{2, 4});
    CHECK(stingray_degree_bounds(5) == std::pair{2, 3});
    CHECK(stingray_degree_bounds(20) == std::pair{2, 10});
    CHECK(stingray_degree_bounds(50) == std::pair{2, 12});
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(8) == 3);
    CHECK(ceil_log2(9) == 4);
}

TEST_CASE("classification of planted characteristic polynomials") {
    auto F = Field::make(5, 1);
    CHECK_FALSE(classify_prestingray(Matrix::identity(F, 6), 2, 4));

    const Poly P{2, 1, 1};  // x^2 + x + 2
    REQUIRE(poly::is_irreducible(*F, P));
    const Matrix g = direct_sum(companion(F, P), jordan_one(F, 4));
    auto hit = classify_prestingray(g, 2, 4);
    REQUIRE(hit);
    CHECK(hit->m == 2);
    CHECK(hit->factor == P);

    // P * Q with deg Q = 4: degree 2 divides 4, so only Q qualifies.
    const Poly Q{2, 0, 0, 0, 1};  // x^4 + 2
    REQUIRE(poly::is_irreducible(*F, Q));
    const Matrix h = direct_sum(companion(F, P), companion(F, Q));
    auto hit2 = classify_prestingray(h, 2, 4);
    REQUIRE(hit2);
    CHECK(hit2->m == 4);
    CHECK(hit2->factor == Q);
    CHECK_FALSE(classify_prestingray(h, 2, 3));

    // Multiplicity two is not allowed.
    CHECK_FALSE(classify_prestingray(direct_sum(companion(F, P), companion(F, P)), 2, 2));
}

TEST_CASE("exponent examples") {
    SUBCASE("quadratic body and a unipotent block of size 4 over GF(5)") {
        auto F = Field::make(5, 1);
        const Poly P{2, 1, 1};
        const Matrix g = direct_sum(companion(F, P), jordan_one(F, 4));
        auto hit = classify_prestingray(g, 2, 4);
        REQUIRE(hit);
        CHECK(stingray_exponent(*F, hit->profile, P) == 20);
        const Matrix s = power_to_stingray(g, hit->profile, P);
        CHECK(s == pow(g, 20));
        CHECK(rank(sub(s, Matrix::identity(F, 6))) == 2);
    }
    SUBCASE("a single factor needs no powering") {
        auto F = Field::make(5, 1);
        const Poly Q{2, 0, 0, 0, 1};
        const Matrix g = companion(F, Q);
        auto hit = classify_prestingray(g, 2, 4);
        REQUIRE(hit);
        CHECK(stingray_exponent(*F, hit->profile, Q) == 1);
        CHECK(power_to_stingray(g, hit->profile, Q) == g);
    }
    SUBCASE("GF(2) with a cubic partner") {
        auto F = Field::make(2, 1);
        const Poly P1{1, 1, 1};     // x^2 + x + 1
        const Poly P2{1, 1, 0, 1};  // x^3 + x + 1
        const Matrix g = direct_sum(companion(F, P1), companion(F, P2));
        auto hit = classify_prestingray(g, 2, 2);
        REQUIRE(hit);
        CHECK(stingray_exponent(*F, hit->profile, P1) == 7);
        CHECK(pow(companion(F, P2), 7).is_identity());
        CHECK(rank(sub(power_to_stingray(g, hit->profile, P1), Matrix::identity(F, 5))) == 2);
    }
}

TEST_CASE("powering planted candidates leaves exactly an m-dimensional body") {
    std::mt19937_64 rng(2024);
    int checked = 0, ppd_checked = 0;
    for (int t = 0; t < 200; ++t) {
        const std::uint32_t q = std::vector<std::uint32_t>{2, 3, 4, 5, 7}[t % 5];
        auto F = Field::make(q == 4 ? 2 : q, q == 4 ? 2 : 1);
        const int m = 2 + int(rng() % 3);
        const Poly P1 = random_irreducible(*F, m, rng);
        Matrix g = companion(F, P1);
        // Up to three other blocks: companion(Q^c) with m not dividing deg Q.
        const int blocks = 1 + int(rng() % 3);
        for (int b = 0; b < blocks; ++b) {
            int e;
            do e = 1 + int(rng() % 4);
            while (e % m == 0);
            const Poly Q = random_irreducible(*F, e, rng);
            if (Q == P1) continue;
            const int c = 1 + int(rng() % 3);
            Poly Qc{1};
            for (int k = 0; k < c; ++k) Qc = poly::mul(*F, Qc, Q);
            g = direct_sum(g, companion(F, Qc));
        }
        const int d = g.rows();
        const Matrix L = random_invertible(F, d, rng);
        g = conjugate(g, L);
        std::optional<PrestingrayHit> hit;
        for (auto& h : prestingray_candidates(g, m, m))
            if (h.factor == P1) hit = h;
        if (!hit) continue;  // a repeated Q collided with the degree rule
        ++checked;
        const Matrix I = Matrix::identity(F, d);
        const BigInt B = stingray_exponent(*F, hit->profile, P1);
        const Matrix s = power_to_stingray(g, hit->profile, P1);
        // The fixed space always has dimension at least d - m; exactly
        // d - m once the body carries a primitive prime divisor.
        const bool ppd = ppd_phi(std::uint32_t(m), *F) > 1 && ppd_witness(*F, P1);
        CHECK(rank(sub(s, I)) <= m);
        if (ppd) {
            ++ppd_checked;
            CHECK(rank(sub(s, I)) == m);
        }
        if (B < (BigInt(1) << 120)) CHECK(s == pow(g, static_cast<u128>(B)));
        // The reduced exponent divides B and leaves the same fixed space.
        const BigInt Br = reduced_stingray_exponent(*F, hit->profile, P1);
        CHECK(B % Br == 0);
        const Matrix sr = pow(g, static_cast<u128>(Br));
        CHECK(rank(sub(sr, I)) <= m);
        if (ppd) CHECK(rank(sub(sr, I)) == m);
    }
    CHECK(checked >= 150);
    CHECK(ppd_checked >= 100);
}

TEST_CASE("without a primitive prime divisor the body can die") {
    // x^2 + 1 over GF(3) has order 4, and B = (3 - 1)(3 - 1) = 4.
    auto F = Field::make(3, 1);
    const Poly P1{1, 0, 1};
    Matrix g = direct_sum(companion(F, P1), Matrix::from_rows(F, {{1, 0}, {0, 2}}));
    auto hit = classify_prestingray(g, 2, 2);
    REQUIRE(hit);
    CHECK(ppd_phi(2, *F) == 1);
    CHECK(stingray_exponent(*F, hit->profile, P1) == 4);
    CHECK(power_to_stingray(g, hit->profile, P1).is_identity());
    WordGraph wg;
    CHECK_FALSE(stingray_from_draw(wg, {g, wg.input()}, 2, 2));
}

TEST_CASE("the cubic-body element of GL(10,5) used as a draw") {
    auto F = Field::make(5, 1);
    const Matrix g = digits_matrix(F, {"4133212404", "3344341032", "2104311203", "3134402013", "3411034411",
                                       "1044221142", "2422034210", "0222403420", "3411434421", "0222213212"});
    WordGraph wg;
    auto c = stingray_from_draw(wg, {g, wg.input()}, 2, 6);
    REQUIRE(c);
    CHECK(c->m == 3);
    CHECK(c->exponent == 100);  // p^beta = 25 >= 7 for (x - 1)^7, times q - 1
    CHECK(certificate_holds(*c));
    check_cert(*c, 2, 6);
}

TEST_CASE("certificates drawn in SL(10,5) hold") {
    auto F = Field::make(5, 1);
    const auto X = gen_instance(F, 10, 1, Disguise::Conjugate);
    WordGraph g;
    std::vector<Tracked> Xt;
    for (const auto& x : X) Xt.push_back({x, g.input()});
    PrSource src(g, Xt, 17);
    Budget b(5000);
    const auto [lo, hi] = stingray_degree_bounds(10);
    for (int k = 0; k < 100; ++k) {
        auto c = find_stingray_element(src, b, lo, hi);
        REQUIRE(c);
        check_cert(*c, lo, hi);
        CHECK(certificate_holds(*c));
        // The word evaluates to s.
        std::vector<NodeId> ins;
        for (auto& x : Xt) ins.push_back(x.w);
        auto vals = eval_last_show(compile_words(g, ins, {c->s.w}), X);
        CHECK(vals.at(0) == c->s.m);
    }
}

TEST_CASE("ppd certificates carry a primitive prime divisor in the body order") {
    int seen = 0;
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
        auto F = field_of_order(q);
        const auto X = gen_instance(F, 12, q, Disguise::Conjugate);
        WordGraph g;
        std::vector<Tracked> Xt;
        for (const auto& x : X) Xt.push_back({x, g.input()});
        PrSource src(g, Xt, 5);
        Budget b(2000);
        for (int k = 0; k < 20; ++k) {
            auto c = find_stingray_element(src, b, 2, 6);
            REQUIRE(c);
            if (!c->ppd_certified || ipow(q, c->m) > 1000000) continue;
            const std::uint64_t ord = brute_order(restrict_to(c->s.m, c->body), ipow(q, c->m));
            REQUIRE(ord > 0);
            bool found = false;
            for (std::uint64_t r = 2; r <= ord; ++r)
                if (ord % r == 0 && is_prime(r) && is_ppd(r, q, c->m)) found = true;
            CHECK(found);
            ++seen;
        }
    }
    CHECK(seen >= 30);
}

TEST_CASE("impossible degree window exhausts the budget") {
    auto F = Field::make(3, 1);
    const auto X = gen_instance(F, 6, 1, Disguise::Conjugate);
    WordGraph g;
    std::vector<Tracked> Xt;
    for (const auto& x : X) Xt.push_back({x, g.input()});
    PrSource src(g, Xt, 1);
    Budget b(50);
    CHECK_FALSE(find_stingray_element(src, b, 7, 9));
    CHECK(b.exhausted());
    CHECK(b.used() == 50);
}
