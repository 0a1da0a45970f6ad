#pragma once

// Stingray elements: a fixed space of codimension m and an irreducible
// action on a complementary invariant m-space.

#include <optional>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "slrec/rnd.hpp"

namespace slrec {

using BigInt = boost::multiprecision::cpp_int;

struct PrestingrayHit {
    Poly factor;  // the degree-m factor P1
    FactorProfile profile;
    int m = 0;
};

/// All pre-stingray factors of g with degree in [m_lo, m_hi], by increasing degree.
std::vector<PrestingrayHit> prestingray_candidates(const Matrix& g, int m_lo, int m_hi);
/// The candidate of smallest degree, if any.
std::optional<PrestingrayHit> classify_prestingray(const Matrix& g, int m_lo, int m_hi);

/// p^beta * prod over the other factors of (q^deg - 1); 1 if P1 is the only factor.
BigInt stingray_exponent(const Field& F, const FactorProfile& profile, const Poly& P1);
/// Same with the product replaced by an lcm; still kills every part of g
/// outside the P1-component and is coprime to any ppd of q^m - 1.
BigInt reduced_stingray_exponent(const Field& F, const FactorProfile& profile, const Poly& P1);
/// g^B, computed as (x^B mod charpoly)(g).
Matrix power_to_stingray(const Matrix& g, const FactorProfile& profile, const Poly& P1);

struct StingrayCert {
    Tracked s;
    int m = 0;
    Subspace body;  // im(s - 1)
    Subspace tail;  // ker(s - 1)
    Poly factor;
    bool ppd_certified = false;
    BigInt exponent;  // the reduced exponent
};

/// Checks rank, direct sum and irreducibility on the body.
bool certificate_holds(const StingrayCert& c);

/// Powers a candidate draw up and certifies it; nullopt if no candidate in
/// [m_lo, m_hi] survives.
std::optional<StingrayCert> stingray_from_draw(WordGraph& g, const Tracked& x, int m_lo, int m_hi);

/// Degree window [2, 2 ceil(log2 d1)], capped at d1 - 2 for d1 > 4.
std::pair<int, int> stingray_degree_bounds(int d1);

/// Draws until a certified stingray element appears; nullopt when the budget runs out.
std::optional<StingrayCert> find_stingray_element(PrSource& src, Budget& budget, int m_lo, int m_hi);

int ceil_log2(long long n);

}  // namespace slrec
