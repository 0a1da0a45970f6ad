#pragma once

// Ascent from standard generators of a stingray-embedded SL(n,q) to those of
// SL(min(2n - 1, d), q).
//
// All matrices are in frame coordinates: if F is the frame, an element x of
// the input group appears as F x F^{-1}. Indices are 0-based, so the basis
// vector v_n of the degree-n block is row n - 1.

#include <optional>

#include "slrec/rnd.hpp"
#include "slrec/stdgens.hpp"

namespace slrec {

struct StdGens {
    int n = 0;
    std::vector<Tracked> gens;  // d x d, standard generator order
    Matrix frame;               // d x d
};

/// True iff every generator equals its standard matrix exactly.
bool is_standard(const StdGens& Y);

/// An element of the degree-n block with a fixed space of dimension d - n + 1.
Tracked choose_t(Rewriter& rw, const StdGens& Y);

int next_degree(int n, int d);

/// Draws E until t^E satisfies the dimension conditions, then conjugates by
/// an element of the block so that v_n is fixed. nullopt when out of budget.
std::optional<Tracked> compute_doubling_element(Rewriter& rw, const StdGens& Y, const Tracked& t, PrSource& src,
                                                Budget& budget);

struct BaseChange {
    Matrix L;
    std::vector<int> sources;  // sources[k]: row j whose image gave new basis vector n + k
};

/// New basis: v_1..v_n, projections of v_j M onto the complement of V_n,
/// then a basis of the complement's intersection with Fix(M).
std::optional<BaseChange> build_base_change(const Matrix& M, int n, int nprime);

/// Rank of rows n..n'-1, columns 0..n-2 of H^{-1} equals n' - n.
bool strong_check(const Matrix& Hinv, int n, int nprime);

/// E_{k,n-1}(w_l) for n <= k < n', indexed [k - n][l].
using Vertical = std::vector<std::vector<Tracked>>;

std::optional<Vertical> vertical_transvections(Rewriter& rw, const Tracked& H, const Tracked& Hinv, int n,
                                               int nprime);

/// E_{n-1,k}(1) for n <= k < n', indexed by k - n.
std::optional<std::vector<Tracked>> horizontal_transvections(Rewriter& rw, const Tracked& H, const Tracked& Hinv,
                                                             const Vertical& vert, const std::vector<int>& sources,
                                                             int n, int nprime);

/// z1 and z2 of degree n'.
std::pair<Tracked, Tracked> assemble_cycles(WordGraph& g, const StdGens& Y, const Vertical& vert,
                                            const std::vector<Tracked>& horiz, int nprime);

struct AscentStats {
    int steps = 0;
    int weak_rejections = 0;
    int strong_rejections = 0;
};

/// One step; the result has been checked against the standard matrices.
std::optional<StdGens> going_up_step(const StdGens& Y, PrSource& src, Budget& budget, AscentStats* stats = nullptr);

/// Steps until n = d; each step may use at most initial / ceil(log2 d) draws.
std::optional<StdGens> going_up(const StdGens& Y2, PrSource& src, Budget& budget, AscentStats* stats = nullptr);

}  // namespace slrec
