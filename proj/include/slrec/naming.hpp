#pragma once

// Monte-Carlo test that two matrices generate SL(n,q).

#include <cstdint>

#include "slrec/rnd.hpp"

namespace slrec {

/// Dimension of the smallest subspace containing v and closed under the gens.
int spin_dimension(const std::vector<Elt>& v, const std::vector<Matrix>& gens);

/// Irreducibility of <gens> on F_q^n, certified by the Holt-Rees criterion.
/// False means either a proper submodule was found or no certificate
/// turned up within `tries` attempts.
bool irreducible_group(const std::vector<Matrix>& gens, std::mt19937_64& rng, int tries = 20);

/// Irreducibility plus two ppd(n,q;e) elements with n/2 < e <= n, one with
/// e <= n - 1 and the other of a different degree. Each random element
/// costs one draw; running out of budget gives false.
bool naming_check(const Matrix& a, const Matrix& b, Budget& budget, std::uint64_t seed, int max_draws = 40);
bool naming_check(const std::vector<Matrix>& gens, Budget& budget, std::uint64_t seed, int max_draws = 40);

}  // namespace slrec
