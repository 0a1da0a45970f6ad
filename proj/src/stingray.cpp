#include "slrec/stingray.hpp"

#include <algorithm>

namespace slrec {

int ceil_log2(long long n) {
    int k = 0;
    while ((1LL << k) < n) ++k;
    return k;
}

std::vector<PrestingrayHit> prestingray_candidates(const Matrix& g, int m_lo, int m_hi) {
    const Field& F = g.field();
    std::vector<PrestingrayHit> out;
    m_lo = std::max(m_lo, 1);
    m_hi = std::min(m_hi, g.rows());
    if (m_lo > m_hi) return out;
    FactorProfile prof = poly_factor(F, charpoly(g));
    for (int m = m_lo; m <= m_hi; ++m) {
        const Poly* hit = nullptr;
        bool ok = true;
        for (const auto& [P, c] : prof.factors) {
            const int e = poly::deg(P);
            if (e % m != 0) continue;
            if (e == m && c == 1 && hit == nullptr) {
                hit = &P;
            } else {
                ok = false;
                break;
            }
        }
        if (ok && hit) out.push_back({*hit, prof, m});
    }
    return out;
}

std::optional<PrestingrayHit> classify_prestingray(const Matrix& g, int m_lo, int m_hi) {
    auto all = prestingray_candidates(g, m_lo, m_hi);
    if (all.empty()) return std::nullopt;
    return all.front();
}

BigInt stingray_exponent(const Field& F, const FactorProfile& profile, const Poly& P1) {
    BigInt B = 1;
    int cmax = 0;
    const BigInt q = F.q();
    for (const auto& [P, c] : profile.factors) {
        if (P == P1) continue;
        cmax = std::max(cmax, c);
        B *= boost::multiprecision::pow(q, unsigned(poly::deg(P))) - 1;
    }
    // p^beta >= cmax with beta minimal.
    BigInt pb = 1;
    while (cmax > 1 && pb < cmax) pb *= F.p();
    return B * pb;
}

BigInt reduced_stingray_exponent(const Field& F, const FactorProfile& profile, const Poly& P1) {
    BigInt B = 1;
    int cmax = 0;
    const BigInt q = F.q();
    for (const auto& [P, c] : profile.factors) {
        if (P == P1) continue;
        cmax = std::max(cmax, c);
        const BigInt t = boost::multiprecision::pow(q, unsigned(poly::deg(P))) - 1;
        B = B / boost::multiprecision::gcd(B, t) * t;
    }
    BigInt pb = 1;
    while (cmax > 1 && pb < cmax) pb *= F.p();
    return B * pb;
}

namespace {

std::vector<bool> bits_msb_first(BigInt e) {
    std::vector<bool> bits;
    while (e > 0) {
        bits.push_back(static_cast<bool>(e & 1));
        e >>= 1;
    }
    std::reverse(bits.begin(), bits.end());
    return bits;
}

// x^e modulo a monic m.
Poly x_pow_mod(const Field& F, const std::vector<bool>& bits, const Poly& m) {
    Poly r{1};
    const Poly x = poly::mod(F, Poly{0, 1}, m);
    for (bool b : bits) {
        r = poly::mulmod(F, r, r, m);
        if (b) r = poly::mulmod(F, r, x, m);
    }
    return r;
}

}  // namespace

Matrix power_to_stingray(const Matrix& g, const FactorProfile& profile, const Poly& P1) {
    const Field& F = g.field();
    BigInt B = stingray_exponent(F, profile, P1);
    Poly chi = expand(F, profile);
    return poly_eval(g, x_pow_mod(F, bits_msb_first(B), chi));
}

bool certificate_holds(const StingrayCert& c) {
    const Matrix& s = c.s.m;
    const int d = s.rows();
    auto [body, tail] = image_and_kernel(sub(s, Matrix::identity(s.field_ptr(), d)));
    if (!(body == c.body) || !(tail == c.tail)) return false;
    if (body.dim() != c.m || tail.dim() != d - c.m) return false;
    if (subspace_intersect(body, tail).dim() != 0) return false;
    if (!restrict_to(s, tail).is_identity()) return false;
    return irreducible_on(s, body);
}

std::optional<StingrayCert> stingray_from_draw(WordGraph& g, const Tracked& x, int m_lo, int m_hi) {
    const Field& F = x.m.field();
    auto cands = prestingray_candidates(x.m, std::max(m_lo, 2), m_hi);
    for (auto& hit : cands) {
        bool ppd = false;
        try {
            if (ppd_phi(hit.m, F) > 1) {
                if (!ppd_witness(F, hit.factor)) continue;
                ppd = true;
            }
        } catch (const FactorizationTooLarge&) {
            ppd = false;
        }
        StingrayCert c;
        c.m = hit.m;
        c.factor = hit.factor;
        c.ppd_certified = ppd;
        c.exponent = reduced_stingray_exponent(F, hit.profile, hit.factor);
        const Poly chi = expand(F, hit.profile);
        const auto bits = bits_msb_first(c.exponent);
        c.s = {poly_eval(x.m, x_pow_mod(F, bits, chi)), g.pow_bits(x.w, bits)};
        const int d = x.m.rows();
        std::tie(c.body, c.tail) = image_and_kernel(sub(c.s.m, Matrix::identity(x.m.field_ptr(), d)));
        if (c.body.dim() != c.m || c.tail.dim() != d - c.m) continue;
        if (subspace_intersect(c.body, c.tail).dim() != 0) continue;
        if (!irreducible_on(c.s.m, c.body)) continue;
        return c;
    }
    return std::nullopt;
}

std::pair<int, int> stingray_degree_bounds(int d1) {
    int hi = 2 * ceil_log2(d1);
    if (d1 > 4) hi = std::min(hi, d1 - 2);
    return {2, std::min(hi, d1)};
}

std::optional<StingrayCert> find_stingray_element(PrSource& src, Budget& budget, int m_lo, int m_hi) {
    while (true) {
        Tracked x;
        try {
            x = src.next(budget);
        } catch (const BudgetExhausted&) {
            return std::nullopt;
        }
        if (auto c = stingray_from_draw(src.graph(), x, m_lo, m_hi)) return c;
    }
}

}  // namespace slrec
