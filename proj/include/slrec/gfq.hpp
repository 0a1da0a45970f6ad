#pragma once

// Arithmetic in GF(p^f) and GF(q)[x].
//
// Elements are encoded as integers sum a_k p^k, where a_k is the coordinate
// of x^k in the polynomial basis (1, x, ..., x^{f-1}).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slrec/error.hpp"

namespace slrec {

using Elt = std::uint32_t;
using u128 = unsigned __int128;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    static constexpr std::uint32_t kMaxOrder = 1u << 16;

    /// Builds GF(p^f). Without a modulus, the monic irreducible of degree f
    /// whose lower coefficients (c_0..c_{f-1}) have the smallest integer
    /// encoding is used.
    static FieldPtr make(std::uint32_t p, std::uint32_t f,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    std::uint32_t p() const { return p_; }
    std::uint32_t f() const { return f_; }
    std::uint32_t q() const { return q_; }
    /// Modulus coefficients c_0..c_f over F_p, c_f = 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    /// Basis element x^k (0-based).
    Elt omega(std::uint32_t k) const { return pow_p_[k]; }
    Elt from_int(long long n) const;
    Elt from_coeffs(const std::vector<std::uint32_t>& c) const;
    std::vector<std::uint32_t> coeffs(Elt a) const;

    Elt add(Elt a, Elt b) const {
        if (f_ == 1) {
            Elt s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (p_ == 2) return a ^ b;
        if (!add_tab_.empty()) return add_tab_[a * q_ + b];
        return add_digits(a, b);
    }
    Elt neg(Elt a) const { return neg_tab_[a]; }
    Elt sub(Elt a, Elt b) const { return add(a, neg_tab_[b]); }
    Elt mul(Elt a, Elt b) const {
        if (f_ == 1) return static_cast<Elt>((std::uint64_t)a * b % p_);
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        return exp_[s];  // exp_ has length 2(q-1)
    }
    Elt inv(Elt a) const {
        if (a == 0) throw DivisionByZero("inverse of zero");
        return inv_tab_[a];
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, u128 e) const;
    /// Discrete log with respect to the stored primitive element (a != 0).
    std::uint32_t log(Elt a) const { return log_[a]; }
    Elt exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
    Elt primitive() const { return exp_[1 % (q_ - 1)]; }
    bool is_prime_field() const { return f_ == 1; }

    std::string describe() const;

private:
    Field() = default;
    Elt add_digits(Elt a, Elt b) const;
    Elt slow_mul(Elt a, Elt b) const;

    std::uint32_t p_ = 0, f_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elt> pow_p_;
    std::vector<Elt> add_tab_, neg_tab_, inv_tab_;
    std::vector<std::uint32_t> log_;
    std::vector<Elt> exp_;
};

bool is_prime_u64(std::uint64_t n);

/// Polynomials over GF(q), coefficients low degree first, no trailing zeros.
using Poly = std::vector<Elt>;

namespace poly {

void normalize(Poly& a);
int deg(const Poly& a);  // -1 for the zero polynomial
Poly x_power(const Field& F, int k);
Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, Elt c);
/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b);
Poly mod(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);
Poly gcd(const Field& F, Poly a, Poly b);
Poly derivative(const Field& F, const Poly& a);
Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Field& F, const Poly& a, u128 e, const Poly& m);
/// a^q mod m.
Poly frobenius(const Field& F, const Poly& a, const Poly& m);
Elt eval(const Field& F, const Poly& a, Elt x);
bool is_irreducible(const Field& F, const Poly& a);
std::string to_string(const Field& F, const Poly& a);

}  // namespace poly

struct FactorProfile {
    std::vector<std::pair<Poly, int>> factors;  // (monic irreducible, multiplicity)
};

/// Complete factorization of a monic polynomial into irreducibles.
/// Factors are sorted by (degree, coefficients).
FactorProfile poly_factor(const Field& F, const Poly& chi);

/// Multiplies a profile back out.
Poly expand(const Field& F, const FactorProfile& prof);

// Integer factorization for q^m - 1.

struct IntFactor {
    u128 prime;
    int exponent;
};

/// Trial division to 10^6, then Pollard rho. Inputs above `bit_bound` bits
/// raise FactorizationTooLarge.
std::vector<IntFactor> factor_integer(u128 n, int bit_bound = 96);

/// Product of the primitive prime divisors of q^m - 1, with multiplicity.
u128 ppd_phi(std::uint32_t m, std::uint64_t q, int bit_bound = 96);
inline u128 ppd_phi(std::uint32_t m, const Field& F, int bit_bound = 96) {
    return ppd_phi(m, F.q(), bit_bound);
}

/// True iff x^{(q^m-1)/Phi(m,q)} != 1 modulo the irreducible P1 of degree m.
bool ppd_witness(const Field& F, const Poly& P1, int bit_bound = 96);

std::string u128_to_string(u128 v);

}  // namespace slrec
