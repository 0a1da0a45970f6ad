#pragma once

// Standard generators of SL(n,q) and words for transvections in them.
//
// Generator order: E_{1,2}(w_1..w_f), E_{2,1}(w_1..w_f), z1, z2, where
// w_k = x^{k-1} and z1, z2 are the signed cycles (1, n, n-1, ..., 2) and
// (2, n, ..., 3). A permutation matrix for s has e_i -> e_{s(i)}. Indices in
// this API are 0-based.

#include "slrec/words.hpp"

namespace slrec {

Matrix std_z1(FieldPtr F, int n, int d);
/// The identity for n = 2.
Matrix std_z2(FieldPtr F, int n, int d);
/// The 2f + 2 standard generators of SL(n,q), embedded as diag(., I_{d-n}).
std::vector<Matrix> standard_generators(FieldPtr F, int n, int d);

/// Words for E_{i,j}(lambda) in tracked standard generators of degree n.
class Rewriter {
public:
    Rewriter(WordGraph& g, std::vector<Tracked> gens, int n);

    Tracked transvection(int i, int j, Elt lambda);
    /// E_{1,2}(mu) as a product of powers of the E_{1,2}(w_k).
    Tracked e12(Elt mu);
    const std::vector<Tracked>& gens() const { return gens_; }
    int degree() const { return n_; }
    WordGraph& graph() { return *g_; }

private:
    struct Move {
        int parent = -1;  // pair index, -1 for (0,1) and unreached
        int via = -1;     // 0: z1, 1: z1^-1, 2: z2, 3: z2^-1
        int sign = 1;     // E_{0,1}(mu) conjugated to pair gives E_pair(sign * mu)
        bool seen = false;
    };
    const Tracked& conjugator(int pair);
    const Tracked& conjugator_inverse(int pair);
    const Tracked& mover(int via);

    WordGraph* g_;
    std::vector<Tracked> gens_;
    int n_;
    int f_;
    std::vector<Move> moves_;
    std::vector<std::optional<Tracked>> conj_, conj_inv_, movers_;
};

}  // namespace slrec
