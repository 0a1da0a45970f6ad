#include "doctest.h"

#include "helpers.hpp"
#include "slrec/io.hpp"
#include "slrec/recognize.hpp"

using namespace slrec;
using namespace testing_helpers;

TEST_CASE("default budgets") {
    const Budgets b = default_budgets(50);
    CHECK(b.n1 == 64 * 6);
    CHECK(b.n2 == 512);
    CHECK(b.n3 == 64 * 6);
    CHECK(default_budgets(4).n1 == 128);
}

TEST_CASE("literal standard generators of SL(5,3)") {
    auto F = Field::make(3, 1);
    const auto X = gen_instance(F, 5, 1, Disguise::Identity);
    CHECK(X == standard_generators(F, 5, 5));
    RecognitionOptions opts;
    opts.budgets = default_budgets(5);
    const auto res = recognize(X, opts);
    REQUIRE(res.ok);
    CHECK(res.verified);
    CHECK(res.failed_stage.empty());
    CHECK(verify_result(X, res.L, res.slp));
}

TEST_CASE("conjugated SL(10,5) and tampering") {
    auto F = Field::make(5, 1);
    const auto X = gen_instance(F, 10, 42, Disguise::Conjugate);
    RecognitionOptions opts;
    opts.budgets = default_budgets(10);
    opts.seed = 7;
    const auto res = recognize(X, opts);
    REQUIRE(res.ok);
    CHECK(res.verified);
    CHECK(res.used.n1 <= opts.budgets.n1);
    CHECK(res.used.n2 <= opts.budgets.n2);
    CHECK(res.used.n3 <= opts.budgets.n3);
    CHECK(res.chain_degrees.front() == 10);
    CHECK(res.chain_degrees.back() == 4);

    Matrix badL = res.L;
    badL(3, 4) = F->add(badL(3, 4), 1);
    CHECK_FALSE(verify_result(X, badL, res.slp));

    // Swap the operands of the last multiplication.
    auto code = res.slp.code();
    for (auto it = code.rbegin(); it != code.rend(); ++it)
        if (it->op == Instruction::Op::Mul && it->a != it->b) {
            std::swap(it->a, it->b);
            break;
        }
    const Mslp bad(res.slp.quota(), res.slp.ninputs(), code);
    CHECK_FALSE(verify_result(X, res.L, bad));
}

TEST_CASE("the same seed reproduces the result") {
    auto F = Field::make(2, 2);
    const auto X = gen_instance(F, 9, 5, Disguise::Conjugate);
    RecognitionOptions opts;
    opts.budgets = default_budgets(9);
    opts.seed = 11;
    const auto a = recognize(X, opts);
    const auto b = recognize(X, opts);
    REQUIRE(a.ok);
    CHECK(a.slp == b.slp);
    CHECK(a.L == b.L);
    CHECK(a.used.n1 == b.used.n1);
    CHECK(a.used.n3 == b.used.n3);
}

TEST_CASE("zero budgets fail in the descent; d = 4 skips it") {
    auto F = Field::make(3, 1);
    RecognitionOptions opts;
    opts.budgets = {0, 0, 0};
    const auto res = recognize(gen_instance(F, 6, 1, Disguise::Conjugate), opts);
    CHECK_FALSE(res.ok);
    CHECK(res.failed_stage == "descent");
    CHECK(res.used.n1 == 0);

    opts.budgets = default_budgets(4);
    const auto r4 = recognize(gen_instance(F, 4, 2, Disguise::Conjugate), opts);
    REQUIRE(r4.ok);
    CHECK(r4.used.n1 == 0);
    CHECK(r4.chain_degrees == std::vector<int>{4});
}

TEST_CASE("bad inputs") {
    auto F = Field::make(3, 1);
    RecognitionOptions opts;
    CHECK_THROWS_AS(recognize({}, opts), EmptyGenerators);
    CHECK_THROWS_AS(recognize(standard_generators(F, 3, 3), opts), ShapeMismatch);
}

TEST_CASE("seeded instances") {
    auto F = Field::make(7, 1);
    CHECK(gen_instance(F, 6, 3, Disguise::Conjugate) == gen_instance(F, 6, 3, Disguise::Conjugate));
    CHECK_FALSE(gen_instance(F, 6, 3, Disguise::Conjugate) == gen_instance(F, 6, 4, Disguise::Conjugate));
    const auto P = gen_instance(F, 6, 3, Disguise::Products);
    CHECK(P.size() >= 2);
    CHECK(P.size() <= 6);
    for (const auto& x : P) CHECK(det(x) == 1);
}

TEST_CASE("product-disguised instances are recognized") {
    auto F = Field::make(2, 2);
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto X = gen_instance(F, 7, seed, Disguise::Products);
        RecognitionOptions opts;
        opts.budgets = default_budgets(7);
        opts.seed = seed;
        const auto res = recognize(X, opts);
        ok += res.verified;
        if (res.ok) CHECK(verify_result(X, res.L, res.slp));
    }
    CHECK(ok >= 9);
}

TEST_CASE("bench table") {
    CHECK(bench_csv(bench({}, 3, {}, 1)) ==
          "d,q,repeats,successes,success_rate,mean_seconds,median_seconds,mean_draws\n");
    const auto a = bench({{6, 3}, {5, 4}}, 2, {}, 5);
    const auto b = bench({{6, 3}, {5, 4}}, 2, {}, 5);
    REQUIRE(a.size() == 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].mean_draws == b[i].mean_draws);
        CHECK(a[i].successes == 2);
    }
}

TEST_CASE("matrix files round trip") {
    auto F = Field::make(3, 2);
    CHECK(field_line(*F) == "FIELD 3 2 " + std::to_string(F->modulus()[0]) + " " +
                                std::to_string(F->modulus()[1]) + " 1");
    const auto X = gen_instance(F, 5, 2, Disguise::Conjugate);
    const std::string text = format_matrices(X);
    const MatrixFile back = parse_matrices(text);
    CHECK(back.field->q() == 9);
    CHECK(back.field->modulus() == F->modulus());
    REQUIRE(back.matrices.size() == X.size());
    for (std::size_t k = 0; k < X.size(); ++k)
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) CHECK(back.matrices[k](i, j) == X[k](i, j));
    CHECK(format_matrices(back.matrices) == text);
}

TEST_CASE("matrix file errors carry line numbers") {
    auto err = [](const std::string& text) {
        try {
            parse_matrices(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(err("").find("empty") != std::string::npos);
    CHECK(err("FIELD 4 1 0 1\n").find("line 1") != std::string::npos);
    CHECK(err("FIELD 5 1 0 1\nMATRIX 2\n1 2\n3\n").find("line 4") != std::string::npos);
    CHECK(err("FIELD 5 1 0 1\nMATRIX 2\n1 2\n3 5\n").find("out of range") != std::string::npos);
    CHECK(err("FIELD 5 1 0 1\nMATRIX 2\n1 2\n").find("ends inside") != std::string::npos);
    CHECK(err("FIELD 5 1 0 2\n").find("monic") != std::string::npos);
    CHECK(err("FIELD 5 1 0 1\nMATRX 2\n").find("line 2") != std::string::npos);
    CHECK(err("FIELD 5 1 0 1\n# comment\n\nMATRIX 1\n1\n") == "no error");
}

TEST_CASE("recognized programs serialize byte for byte") {
    auto F = Field::make(5, 1);
    const auto X = gen_instance(F, 6, 1, Disguise::Conjugate);
    RecognitionOptions opts;
    opts.budgets = default_budgets(6);
    const auto res = recognize(X, opts);
    REQUIRE(res.ok);
    const std::string text = res.slp.serialize();
    const Mslp back = Mslp::parse(text);
    CHECK(back == res.slp);
    CHECK(back.serialize() == text);
    CHECK(verify_result(X, res.L, back));
}
