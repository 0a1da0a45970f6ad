#pragma once

// Straight-line programs with memory.
//
// A program owns `quota` memory slots, the first `ninputs` of which are set by
// the caller. Instructions copy, multiply or invert slot contents; a Show
// instruction appends the current contents of a set of slots (in ascending
// slot order) to the output. Slot indices are 1-based.

#include <concepts>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slrec/error.hpp"

namespace slrec {

struct Instruction {
    enum class Op { Copy, Mul, Inv, Show };
    Op op = Op::Copy;
    int dst = 0;
    int a = 0;
    int b = 0;
    std::vector<int> show;  // sorted, unique

    static Instruction copy(int dst, int src) { return {Op::Copy, dst, src, 0, {}}; }
    static Instruction mul(int dst, int lhs, int rhs) { return {Op::Mul, dst, lhs, rhs, {}}; }
    static Instruction inv(int dst, int src) { return {Op::Inv, dst, src, 0, {}}; }
    static Instruction show_slots(std::vector<int> slots);

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

class Mslp {
public:
    Mslp() = default;
    /// Validates slot ranges and that every read follows a write or a declared
    /// input; throws UninitializedSlotRead otherwise.
    Mslp(int quota, int ninputs, std::vector<Instruction> code);

    int quota() const { return quota_; }
    int ninputs() const { return ninputs_; }
    const std::vector<Instruction>& code() const { return code_; }
    std::size_t length() const { return code_.size(); }
    std::size_t show_count() const;

    std::string serialize() const;
    /// Parses the text format; errors carry the 1-based line number.
    static Mslp parse(const std::string& text);

    friend bool operator==(const Mslp&, const Mslp&) = default;

private:
    int quota_ = 0;
    int ninputs_ = 0;
    std::vector<Instruction> code_;
};

/// The operations a group must provide for evaluation.
template <class Ops>
concept GroupOps = requires(const Ops& o, const typename Ops::Element& x) {
    { o.mul(x, x) } -> std::convertible_to<typename Ops::Element>;
    { o.inv(x) } -> std::convertible_to<typename Ops::Element>;
    { o.eq(x, x) } -> std::convertible_to<bool>;
};

/// Called with (slot, is_write) on every memory access; used by tests.
using SlotObserver = std::function<void(int, bool)>;

/// Runs the program. `init` supplies the first init.size() slots; it must
/// cover the declared inputs and may not exceed the quota.
template <GroupOps Ops>
std::vector<std::vector<typename Ops::Element>> eval(const Mslp& prog,
                                                     const std::vector<typename Ops::Element>& init,
                                                     const Ops& ops, const SlotObserver& observe = {}) {
    using E = typename Ops::Element;
    if (static_cast<int>(init.size()) < prog.ninputs() || static_cast<int>(init.size()) > prog.quota())
        throw Error("eval: init must cover the declared inputs and fit the quota");
    std::vector<std::optional<E>> mem(prog.quota());
    for (std::size_t i = 0; i < init.size(); ++i) mem[i] = init[i];
    auto read = [&](int s) -> const E& {
        if (observe) observe(s, false);
        auto& slot = mem.at(s - 1);
        if (!slot) throw UninitializedSlotRead("slot " + std::to_string(s));
        return *slot;
    };
    auto write = [&](int s, E v) {
        if (observe) observe(s, true);
        mem.at(s - 1) = std::move(v);
    };
    std::vector<std::vector<E>> out;
    for (const auto& ins : prog.code()) {
        switch (ins.op) {
            case Instruction::Op::Copy: write(ins.dst, read(ins.a)); break;
            case Instruction::Op::Mul: write(ins.dst, ops.mul(read(ins.a), read(ins.b))); break;
            case Instruction::Op::Inv: write(ins.dst, ops.inv(read(ins.a))); break;
            case Instruction::Op::Show: {
                std::vector<E> shown;
                for (int s : ins.show) shown.push_back(read(s));
                out.push_back(std::move(shown));
                break;
            }
        }
    }
    return out;
}

/// Runs `first`, then `second` with its input k bound to slot wiring[k-1] of
/// `first`. Shows of `first` are kept only if `keep_shows`.
Mslp compose(const Mslp& first, const Mslp& second, const std::vector<int>& wiring, bool keep_shows = false);

}  // namespace slrec
