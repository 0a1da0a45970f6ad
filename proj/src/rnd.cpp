#include "slrec/rnd.hpp"

#include <algorithm>

namespace slrec {

void Budget::take() {
    if (remaining_ <= 0) throw BudgetExhausted("no random draws left");
    --remaining_;
}

Budget Budget::carve(long long cap) const { return Budget(std::max(0LL, std::min(cap, remaining_))); }

void Budget::settle(const Budget& child) { remaining_ -= child.used(); }

PrSource::PrSource(WordGraph& g, std::vector<Tracked> gens, std::uint64_t seed, int slots, int scramble)
    : g_(&g), rng_(seed) {
    if (gens.empty()) throw EmptyGenerators("product replacement needs at least one generator");
    slots = std::max(slots, 2);
    for (int i = 0; i < slots; ++i) {
        acc_.push_back(gens[std::size_t(i) % gens.size()]);
        inv_.push_back(inverse(acc_.back().m));
    }
    for (int k = 0; k < scramble; ++k) step();
}

void PrSource::step() {
    const std::size_t r = acc_.size();
    std::size_t i = rng_() % r;
    std::size_t j = rng_() % (r - 1);
    if (j >= i) ++j;
    if (rng_() & 1) {
        acc_[i] = {mul(acc_[i].m, acc_[j].m), g_->mul(acc_[i].w, acc_[j].w)};
        inv_[i] = mul(inv_[j], inv_[i]);
    } else {
        acc_[i] = {mul(acc_[i].m, inv_[j]), g_->mul(acc_[i].w, g_->inv(acc_[j].w))};
        inv_[i] = mul(acc_[j].m, inv_[i]);
    }
    last_ = i;
}

Tracked PrSource::next(Budget& budget) {
    budget.take();
    step();
    return acc_[last_];
}

}  // namespace slrec
