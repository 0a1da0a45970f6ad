#include "slrec/words.hpp"

#include <functional>
#include <limits>
#include <queue>

namespace slrec {

NodeId WordGraph::input() {
    nodes_.push_back({Kind::Input, -1, -1});
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId WordGraph::mul(NodeId a, NodeId b) {
    nodes_.push_back({Kind::Mul, a, b});
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId WordGraph::inv(NodeId a) {
    nodes_.push_back({Kind::Inv, a, -1});
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId WordGraph::pow(NodeId a, u128 e) {
    if (e == 0) return identity_like(a);
    std::vector<bool> bits;
    while (e) {
        bits.push_back(e & 1);
        e >>= 1;
    }
    return pow_bits(a, std::vector<bool>(bits.rbegin(), bits.rend()));
}

NodeId WordGraph::pow_signed(NodeId a, long long e) {
    if (e < 0) return pow(inv(a), static_cast<u128>(-e));
    return pow(a, static_cast<u128>(e));
}

NodeId WordGraph::pow_bits(NodeId a, const std::vector<bool>& bits) {
    if (bits.empty()) return identity_like(a);
    NodeId r = a;
    for (std::size_t i = 1; i < bits.size(); ++i) {
        r = mul(r, r);
        if (bits[i]) r = mul(r, a);
    }
    return r;
}

Mslp compile_words(const WordGraph& g, const std::vector<NodeId>& inputs, const std::vector<NodeId>& outputs,
                   bool preserve_inputs) {
    const std::size_t N = g.size();
    constexpr int kNone = -1;
    std::vector<int> input_slot(N, kNone);
    for (std::size_t i = 0; i < inputs.size(); ++i) input_slot[inputs[i]] = static_cast<int>(i) + 1;

    // Mark every node reachable from the outputs, stopping at inputs.
    std::vector<char> needed(N, 0);
    std::vector<NodeId> stack(outputs.begin(), outputs.end());
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        if (needed[v]) continue;
        needed[v] = 1;
        if (input_slot[v] != kNone) continue;
        const auto& nd = g.node(v);
        if (nd.kind == WordGraph::Kind::Input) throw Error("compile_words: word depends on an undeclared input");
        stack.push_back(nd.a);
        if (nd.kind == WordGraph::Kind::Mul) stack.push_back(nd.b);
    }
    std::vector<NodeId> order;
    for (std::size_t v = 0; v < N; ++v)
        if (needed[v] && input_slot[v] == kNone) order.push_back(static_cast<NodeId>(v));

    constexpr int kForever = std::numeric_limits<int>::max();
    std::vector<int> last(N, kNone);
    for (std::size_t t = 0; t < order.size(); ++t) {
        const auto& nd = g.node(order[t]);
        last[nd.a] = static_cast<int>(t);
        if (nd.kind == WordGraph::Kind::Mul) last[nd.b] = static_cast<int>(t);
    }
    for (NodeId o : outputs) last[o] = kForever;

    std::priority_queue<int, std::vector<int>, std::greater<int>> free_slots;
    int high = static_cast<int>(inputs.size());
    std::vector<int> slot(N, kNone);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        slot[inputs[i]] = static_cast<int>(i) + 1;
        if (!preserve_inputs && last[inputs[i]] == kNone) free_slots.push(static_cast<int>(i) + 1);
    }
    auto release = [&](NodeId v) {
        if (preserve_inputs && input_slot[v] != kNone) return;
        free_slots.push(slot[v]);
    };
    auto alloc = [&]() {
        if (!free_slots.empty()) {
            int s = free_slots.top();
            free_slots.pop();
            return s;
        }
        return ++high;
    };

    std::vector<Instruction> code;
    code.reserve(order.size() + outputs.size() + 1);
    for (std::size_t t = 0; t < order.size(); ++t) {
        const NodeId v = order[t];
        const auto& nd = g.node(v);
        const int sa = slot[nd.a];
        const int sb = nd.kind == WordGraph::Kind::Mul ? slot[nd.b] : 0;
        if (last[nd.a] == static_cast<int>(t)) release(nd.a);
        if (nd.kind == WordGraph::Kind::Mul && nd.b != nd.a && last[nd.b] == static_cast<int>(t)) release(nd.b);
        const int dst = alloc();
        if (nd.kind == WordGraph::Kind::Mul)
            code.push_back(Instruction::mul(dst, sa, sb));
        else
            code.push_back(Instruction::inv(dst, sa));
        slot[v] = dst;
    }
    const int base = high;
    std::vector<int> shown;
    for (std::size_t k = 0; k < outputs.size(); ++k) {
        code.push_back(Instruction::copy(base + static_cast<int>(k) + 1, slot[outputs[k]]));
        shown.push_back(base + static_cast<int>(k) + 1);
    }
    code.push_back(Instruction::show_slots(shown));
    return Mslp(base + static_cast<int>(outputs.size()), static_cast<int>(inputs.size()), std::move(code));
}

std::vector<int> final_show_slots(const Mslp& prog) {
    for (auto it = prog.code().rbegin(); it != prog.code().rend(); ++it)
        if (it->op == Instruction::Op::Show) return it->show;
    return {};
}

Tracked tmul(WordGraph& g, const Tracked& a, const Tracked& b) { return {mul(a.m, b.m), g.mul(a.w, b.w)}; }

Tracked tinv(WordGraph& g, const Tracked& a) { return {inverse(a.m), g.inv(a.w)}; }

Tracked tpow(WordGraph& g, const Tracked& a, long long e) {
    if (e == 0) return {Matrix::identity(a.m.field_ptr(), a.m.rows()), g.identity_like(a.w)};
    Tracked base = e < 0 ? tinv(g, a) : a;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    int top = 63;
    while (!((k >> top) & 1)) --top;
    Tracked r = base;
    for (int bit = top - 1; bit >= 0; --bit) {
        r = tmul(g, r, r);
        if ((k >> bit) & 1) r = tmul(g, r, base);
    }
    return r;
}

Tracked tconj(WordGraph& g, const Tracked& a, const Tracked& b) { return tmul(g, tmul(g, tinv(g, b), a), b); }

std::vector<Matrix> eval_last_show(const Mslp& prog, const std::vector<Matrix>& init) {
    auto shows = eval(prog, init, MatrixOps{});
    if (shows.empty()) return {};
    return shows.back();
}

}  // namespace slrec
