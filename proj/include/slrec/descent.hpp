#pragma once

// Descent from SL(d,q) to a stingray-embedded SL(4,q).

#include <optional>

#include "slrec/stingray.hpp"

namespace slrec {

enum class Strategy { Naming, Restart };

/// A group stingray embedded of degree `degree`: for every generator,
/// L * eval(word) * L^{-1} = diag(m, I).
struct ChainNode {
    int degree = 0;
    std::vector<Tracked> gens;  // degree x degree
    Matrix L;                   // d x d, cumulative
};

/// Builds the next node from two stingray elements of `node`'s group, or
/// nullopt if their bodies meet, the block is not proper or the new basis
/// is singular.
std::optional<ChainNode> combine_stingrays(const ChainNode& node, const StingrayCert& s1, const StingrayCert& s2);

/// Body dimensions searched for in a step from degree d1: the stingray
/// range, narrowed to 2 when 4 ceil(log2 d1) >= d1.
std::pair<int, int> descent_body_bounds(int d1);

/// One descent step; nullopt when `budget` runs out.
std::optional<ChainNode> going_down_basic_step(const ChainNode& node, PrSource& src, Budget& budget,
                                               Strategy strategy, std::mt19937_64& rng);

struct DescentStats {
    int restarts = 0;
};

/// The whole chain, first node = X with L = I, last node of degree 4.
/// Each step gets at most a quarter of the initial budget; when a step
/// fails the chain restarts from X.
std::optional<std::vector<ChainNode>> going_down(WordGraph& g, const std::vector<Tracked>& X, Budget& budget,
                                                 Strategy strategy, std::uint64_t seed,
                                                 DescentStats* stats = nullptr);

/// Iterated base-2 logarithm.
int log_star(double x);

}  // namespace slrec
