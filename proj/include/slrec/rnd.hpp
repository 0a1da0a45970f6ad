#pragma once

// Random group elements by product replacement, with words.

#include <cstdint>
#include <random>
#include <vector>

#include "slrec/words.hpp"

namespace slrec {

/// Counter of random draws. Only ever decreases.
class Budget {
public:
    explicit Budget(long long n = 0) : initial_(n), remaining_(n) {}

    long long remaining() const { return remaining_; }
    long long initial() const { return initial_; }
    long long used() const { return initial_ - remaining_; }
    bool exhausted() const { return remaining_ <= 0; }
    /// Takes one draw; throws BudgetExhausted when none are left.
    void take();
    /// A child budget of at most `cap` draws. Settle it back with `settle`.
    Budget carve(long long cap) const;
    void settle(const Budget& child);

private:
    long long initial_;
    long long remaining_;
};

/// Product-replacement source over a list of tracked generators.
class PrSource {
public:
    PrSource(WordGraph& g, std::vector<Tracked> gens, std::uint64_t seed, int slots = 10, int scramble = 50);

    /// One replacement move x_i <- x_i x_j^{+-1}; returns the new x_i.
    Tracked next(Budget& budget);
    WordGraph& graph() { return *g_; }
    std::mt19937_64& rng() { return rng_; }
    int degree() const { return acc_.front().m.rows(); }

private:
    void step();

    WordGraph* g_;
    std::vector<Tracked> acc_;
    std::vector<Matrix> inv_;  // inverses of acc_ matrices
    std::mt19937_64 rng_;
    std::size_t last_ = 0;
};

}  // namespace slrec
