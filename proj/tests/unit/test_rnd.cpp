#include "doctest.h"

#include <map>
#include <set>

#include "slrec/recognize.hpp"
#include "slrec/rnd.hpp"

using namespace slrec;

namespace {

// Direct evaluation of a word node, by recursion over the graph.
Matrix eval_node(const WordGraph& g, NodeId v, const std::map<NodeId, Matrix>& inputs,
                 std::map<NodeId, Matrix>& memo) {
    if (auto it = inputs.find(v); it != inputs.end()) return it->second;
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    const auto& nd = g.node(v);
    Matrix r = nd.kind == WordGraph::Kind::Mul ? mul(eval_node(g, nd.a, inputs, memo), eval_node(g, nd.b, inputs, memo))
                                               : inverse(eval_node(g, nd.a, inputs, memo));
    memo.emplace(v, r);
    return r;
}

}  // namespace

TEST_CASE("budget counts draws and never goes negative") {
    Budget b(3);
    CHECK(b.initial() == 3);
    b.take();
    b.take();
    CHECK(b.remaining() == 1);
    CHECK(b.used() == 2);
    b.take();
    CHECK(b.exhausted());
    CHECK_THROWS_AS(b.take(), BudgetExhausted);
    CHECK(b.remaining() == 0);
}

TEST_CASE("carved budgets settle back exactly") {
    Budget parent(100);
    Budget child = parent.carve(30);
    CHECK(child.initial() == 30);
    for (int i = 0; i < 12; ++i) child.take();
    parent.settle(child);
    CHECK(parent.remaining() == 88);
    Budget big = parent.carve(1000);
    CHECK(big.initial() == 88);
    Budget none = Budget(0).carve(5);
    CHECK(none.exhausted());
}

TEST_CASE("empty generator lists are rejected") {
    WordGraph g;
    CHECK_THROWS_AS(PrSource(g, {}, 1), EmptyGenerators);
}

TEST_CASE("each draw costs one unit and its word evaluates to it") {
    auto F = Field::make(3, 2);
    const auto X = gen_instance(F, 5, 4, Disguise::Conjugate);
    WordGraph g;
    std::vector<Tracked> Xt;
    std::map<NodeId, Matrix> inputs;
    for (const auto& x : X) {
        Xt.push_back({x, g.input()});
        inputs.emplace(Xt.back().w, x);
    }
    PrSource src(g, Xt, 9);
    Budget b(60);
    std::map<NodeId, Matrix> memo;
    for (int k = 0; k < 60; ++k) {
        const Tracked t = src.next(b);
        CHECK(b.used() == k + 1);
        CHECK(det(t.m) == 1);
        CHECK(eval_node(g, t.w, inputs, memo) == t.m);
    }
    CHECK_THROWS_AS(src.next(b), BudgetExhausted);
}

TEST_CASE("same seed, same stream; different seed, different stream") {
    auto F = Field::make(5, 1);
    const auto X = gen_instance(F, 6, 2, Disguise::Conjugate);
    auto stream = [&](std::uint64_t seed) {
        WordGraph g;
        std::vector<Tracked> Xt;
        for (const auto& x : X) Xt.push_back({x, g.input()});
        PrSource src(g, Xt, seed);
        Budget b(20);
        std::vector<Matrix> out;
        for (int k = 0; k < 20; ++k) out.push_back(src.next(b).m);
        return out;
    };
    CHECK(stream(7) == stream(7));
    CHECK_FALSE(stream(7) == stream(8));
}

TEST_CASE("draws look spread out: many distinct elements and charpolys") {
    auto F = Field::make(2, 1);
    const auto X = gen_instance(F, 6, 1, Disguise::Conjugate);
    WordGraph g;
    std::vector<Tracked> Xt;
    for (const auto& x : X) Xt.push_back({x, g.input()});
    PrSource src(g, Xt, 3);
    Budget b(200);
    std::set<std::vector<Elt>> polys;
    for (int k = 0; k < 200; ++k) {
        Poly c = charpoly(src.next(b).m);
        polys.insert(c);
    }
    // SL(6,2) has far more than 20 classes of characteristic polynomials.
    CHECK(polys.size() >= 20);
}
