#pragma once

// Degree-4 base case: a randomized stabilizer chain with word-labelled
// transversals, used to write the SL(2,q) standard generators as words.

#include <optional>
#include <unordered_map>

#include "slrec/rnd.hpp"

namespace slrec {

/// Order of SL(n,q) as a 128-bit integer.
u128 order_sl(int n, std::uint64_t q);

class StabChain {
public:
    /// Base: projective point of e1, e1, projective point of e2, e2,
    /// projective point of e3, e3, e4.
    StabChain(WordGraph& g, const std::vector<Tracked>& gens);

    /// Adds residues of random elements until the orbit sizes multiply to
    /// |SL(4,q)|. False after `patience` consecutive trivial sifts or when
    /// the budget runs out.
    bool complete(PrSource& src, Budget& budget, int patience = 20);

    /// Writes x as a product of transversal elements; nullopt if x is not
    /// reached by the current chain.
    std::optional<Tracked> sift(const Matrix& x);

    std::vector<std::size_t> orbit_sizes() const;
    u128 order() const;

private:
    struct Level {
        std::vector<Elt> point;  // base point
        bool projective = false;
        std::vector<Tracked> gens;  // strong generators first added at this level
        std::unordered_map<std::uint64_t, Tracked> orbit;  // image -> transversal element
    };
    std::uint64_t key(const std::vector<Elt>& v) const;
    std::vector<Elt> image(const Level& L, const std::vector<Elt>& v, const Matrix& x) const;
    void extend_orbit(std::size_t level, const std::vector<Tracked>& new_gens);
    // Strips x; returns the level where it left the orbit (or levels.size())
    // and the residue.
    std::pair<std::size_t, Tracked> strip(const Tracked& x);

    WordGraph* g_;
    FieldPtr F_;
    std::vector<Level> levels_;
    Tracked one_;
};

/// Words for the 2f + 2 standard generators of SL(2,q) embedded in degree 4,
/// each verified against its target; nullopt on failure.
std::optional<std::vector<Tracked>> recognize_base_case(WordGraph& g, const std::vector<Tracked>& U, Budget& budget,
                                                        std::uint64_t seed);

}  // namespace slrec
