#include "slrec/gfq.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace slrec {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<std::uint32_t> digits(std::uint32_t a, std::uint32_t p, std::uint32_t f) {
    std::vector<std::uint32_t> c(f);
    for (std::uint32_t k = 0; k < f; ++k) {
        c[k] = a % p;
        a /= p;
    }
    return c;
}

}  // namespace

FieldPtr Field::make(std::uint32_t p, std::uint32_t f,
                     std::optional<std::vector<std::uint32_t>> modulus) {
    if (!is_prime_u64(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (f < 1) throw Error("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
        q *= p;
        if (q > kMaxOrder) throw Error("field order exceeds supported size");
    }

    std::shared_ptr<Field> F(new Field());
    F->p_ = p;
    F->f_ = f;
    F->q_ = static_cast<std::uint32_t>(q);
    F->pow_p_.resize(f);
    for (std::uint32_t k = 0, v = 1; k < f; ++k, v *= p) F->pow_p_[k] = v;

    // Prime field helper for irreducibility checks of the modulus.
    FieldPtr prime = (f == 1) ? nullptr : make(p, 1);
    auto irreducible = [&](const std::vector<std::uint32_t>& c) {
        if (f == 1) return true;
        Poly P(c.begin(), c.end());
        return poly::is_irreducible(*prime, P);
    };

    if (modulus) {
        auto c = *modulus;
        if (c.size() != f + 1) throw ReducibleModulus("modulus must have degree f");
        for (auto& x : c) x %= p;
        if (c[f] != 1) throw ReducibleModulus("modulus must be monic");
        if (!irreducible(c)) throw ReducibleModulus("modulus is reducible");
        F->modulus_ = c;
    } else {
        bool found = false;
        std::uint64_t span = q;  // candidates for (c_0..c_{f-1})
        for (std::uint64_t n = 0; n < span && !found; ++n) {
            auto c = digits(static_cast<std::uint32_t>(n), p, f);
            c.push_back(1);
            if (irreducible(c)) {
                F->modulus_ = c;
                found = true;
            }
        }
        if (!found) throw ReducibleModulus("no irreducible modulus found");
    }

    const std::uint32_t Q = F->q_;
    F->neg_tab_.resize(Q);
    for (std::uint32_t a = 0; a < Q; ++a) {
        auto c = digits(a, p, f);
        for (auto& x : c) x = (p - x) % p;
        F->neg_tab_[a] = F->from_coeffs(c);
    }
    if (f > 1 && p != 2 && Q <= 1024) {
        F->add_tab_.resize(static_cast<std::size_t>(Q) * Q);
        for (std::uint32_t a = 0; a < Q; ++a)
            for (std::uint32_t b = 0; b < Q; ++b) F->add_tab_[a * Q + b] = F->add_digits(a, b);
    }

    // Primitive element and log tables.
    std::vector<std::uint64_t> primes_qm1;
    {
        std::uint64_t n = Q - 1;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                primes_qm1.push_back(d);
                while (n % d == 0) n /= d;
            }
        if (n > 1) primes_qm1.push_back(n);
    }
    auto slow_pow = [&](Elt a, std::uint64_t e) {
        Elt r = 1;
        while (e) {
            if (e & 1) r = F->slow_mul(r, a);
            a = F->slow_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    Elt g = 1;
    if (Q > 2) {
        for (g = 2; g < Q; ++g) {
            bool ok = true;
            for (auto r : primes_qm1)
                if (slow_pow(g, (Q - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) break;
        }
    }
    F->exp_.resize(2 * (Q - 1));
    F->log_.assign(Q, 0);
    Elt cur = 1;
    for (std::uint32_t k = 0; k < Q - 1; ++k) {
        F->exp_[k] = cur;
        F->exp_[k + Q - 1] = cur;
        F->log_[cur] = k;
        cur = F->slow_mul(cur, g);
    }
    F->inv_tab_.assign(Q, 0);
    for (std::uint32_t a = 1; a < Q; ++a) F->inv_tab_[a] = F->exp_[(Q - 1 - F->log_[a]) % (Q - 1)];
    return F;
}

Elt Field::add_digits(Elt a, Elt b) const {
    Elt r = 0, v = 1;
    for (std::uint32_t k = 0; k < f_; ++k) {
        Elt s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        r += s * v;
        v *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Elt Field::slow_mul(Elt a, Elt b) const {
    auto x = digits(a, p_, f_), y = digits(b, p_, f_);
    std::vector<std::uint64_t> prod(2 * f_, 0);
    for (std::uint32_t i = 0; i < f_; ++i)
        for (std::uint32_t j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + (std::uint64_t)x[i] * y[j]) % p_;
    for (int k = 2 * static_cast<int>(f_) - 2; k >= static_cast<int>(f_); --k) {
        std::uint64_t c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (std::uint32_t i = 0; i < f_; ++i)
            prod[k - f_ + i] = (prod[k - f_ + i] + (p_ - modulus_[i]) * c) % p_;
    }
    Elt r = 0, v = 1;
    for (std::uint32_t k = 0; k < f_; ++k, v *= p_) r += static_cast<Elt>(prod[k]) * v;
    return r;
}

Elt Field::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elt>(r);
}

Elt Field::from_coeffs(const std::vector<std::uint32_t>& c) const {
    Elt r = 0;
    for (std::uint32_t k = 0; k < f_ && k < c.size(); ++k) r += (c[k] % p_) * pow_p_[k];
    return r;
}

std::vector<std::uint32_t> Field::coeffs(Elt a) const { return digits(a, p_, f_); }

Elt Field::pow(Elt a, u128 e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    u128 k = (static_cast<u128>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
    return exp_[static_cast<std::uint32_t>(k)];
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "GF(" << q_ << ")";
    if (f_ > 1) {
        os << " mod [";
        for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? " " : "") << modulus_[i];
        os << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Polynomials

namespace poly {

void normalize(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly x_power(const Field&, int k) {
    Poly r(k + 1, 0);
    r[k] = 1;
    return r;
}

Poly add(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    normalize(r);
    return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    normalize(r);
    return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    normalize(r);
    return r;
}

Poly scale(const Field& F, const Poly& a, Elt c) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    normalize(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    Poly r = a;
    normalize(r);
    int db = deg(b);
    if (deg(r) < db) return {{}, r};
    Poly qt(deg(r) - db + 1, 0);
    Elt lead_inv = F.inv(b.back());
    for (int k = deg(r); k >= db; --k) {
        Elt c = r[k];
        if (!c) continue;
        c = F.mul(c, lead_inv);
        qt[k - db] = c;
        for (int i = 0; i <= db; ++i) r[k - db + i] = F.sub(r[k - db + i], F.mul(c, b[i]));
    }
    normalize(r);
    normalize(qt);
    return {qt, r};
}

Poly mod(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

Poly monic(const Field& F, const Poly& a) {
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

Poly gcd(const Field& F, Poly a, Poly b) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

Poly derivative(const Field& F, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(static_cast<long long>(i)));
    normalize(r);
    return r;
}

Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m) { return mod(F, mul(F, a, b), m); }

Poly powmod(const Field& F, const Poly& a, u128 e, const Poly& m) {
    Poly result = mod(F, Poly{1}, m);
    Poly base = mod(F, a, m);
    while (e) {
        if (e & 1) result = mulmod(F, result, base, m);
        e >>= 1;
        if (e) base = mulmod(F, base, base, m);
    }
    return result;
}

Poly frobenius(const Field& F, const Poly& a, const Poly& m) { return powmod(F, a, F.q(), m); }

Elt eval(const Field& F, const Poly& a, Elt x) {
    Elt r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = F.add(F.mul(r, x), *it);
    return r;
}

bool is_irreducible(const Field& F, const Poly& a0) {
    Poly a = a0;
    normalize(a);
    int n = deg(a);
    if (n <= 0) return false;
    if (n == 1) return true;
    a = monic(F, a);
    Poly x = x_power(F, 1);
    // x^{q^k} mod a for k = 1..n.
    std::vector<Poly> frob(n + 1);
    frob[0] = mod(F, x, a);
    for (int k = 1; k <= n; ++k) frob[k] = frobenius(F, frob[k - 1], a);
    if (sub(F, frob[n], frob[0]).size() != 0) return false;
    int m = n;
    for (int r = 2; r <= m; ++r) {
        if (m % r) continue;
        while (m % r == 0) m /= r;
        Poly g = gcd(F, a, sub(F, frob[n / r], frob[0]));
        if (deg(g) > 0) return false;
    }
    return true;
}

std::string to_string(const Field& F, const Poly& a) {
    (void)F;
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? " " : "") << a[i];
    os << "]";
    return os.str();
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Factorization

namespace {

using poly::deg;

Poly pth_root(const Field& F, const Poly& a) {
    const std::uint32_t p = F.p();
    Poly r(a.size() / p + 1, 0);
    // a^{1/p} = a^{q/p} in GF(q).
    const u128 e = F.q() / p;
    for (std::size_t i = 0; i < a.size(); i += p) r[i / p] = F.pow(a[i], e);
    poly::normalize(r);
    return r;
}

void square_free(const Field& F, const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    if (deg(f) <= 0) return;
    Poly g = poly::derivative(F, f);
    if (g.empty()) {
        square_free(F, pth_root(F, f), mult * static_cast<int>(F.p()), out);
        return;
    }
    Poly c = poly::gcd(F, f, g);
    Poly w = poly::divmod(F, f, c).first;
    int i = 1;
    while (deg(w) > 0) {
        Poly y = poly::gcd(F, w, c);
        Poly z = poly::divmod(F, w, y).first;
        if (deg(z) > 0) out.emplace_back(poly::monic(F, z), i * mult);
        ++i;
        w = y;
        c = poly::divmod(F, c, y).first;
    }
    if (deg(c) > 0) square_free(F, pth_root(F, c), mult * static_cast<int>(F.p()), out);
}

void equal_degree(const Field& F, const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    int n = deg(g);
    if (n == d) {
        out.push_back(g);
        return;
    }
    std::uniform_int_distribution<std::uint32_t> coef(0, F.q() - 1);
    while (true) {
        Poly a(n, 0);
        for (auto& c : a) c = coef(rng);
        poly::normalize(a);
        if (deg(a) <= 0) continue;
        Poly b;
        if (F.p() == 2) {
            // Trace to GF(2): sum of a^{2^k}, k < f d.
            Poly t = a, s = a;
            for (std::uint32_t k = 1; k < F.f() * static_cast<std::uint32_t>(d); ++k) {
                t = poly::mulmod(F, t, t, g);
                s = poly::add(F, s, t);
            }
            b = s;
        } else {
            // Norm-like product a^{1+q+...+q^{d-1}}, then power (q-1)/2.
            Poly t = poly::mod(F, a, g), nrm = t;
            for (int k = 1; k < d; ++k) {
                t = poly::frobenius(F, t, g);
                nrm = poly::mulmod(F, nrm, t, g);
            }
            b = poly::powmod(F, nrm, (F.q() - 1) / 2, g);
            b = poly::sub(F, b, Poly{1});
        }
        Poly h = poly::gcd(F, g, b);
        if (deg(h) > 0 && deg(h) < n) {
            equal_degree(F, h, d, rng, out);
            equal_degree(F, poly::divmod(F, g, h).first, d, rng, out);
            return;
        }
    }
}

}  // namespace

FactorProfile poly_factor(const Field& F, const Poly& chi0) {
    Poly chi = chi0;
    poly::normalize(chi);
    if (chi.empty()) throw Error("poly_factor: zero polynomial");
    chi = poly::monic(F, chi);
    FactorProfile prof;
    if (deg(chi) == 0) return prof;

    std::vector<std::pair<Poly, int>> sf;
    square_free(F, chi, 1, sf);

    std::mt19937_64 rng(0x5eedULL + F.q());
    std::vector<std::pair<Poly, int>> all;
    const Poly x = poly::x_power(F, 1);
    for (auto& [part, mult] : sf) {
        Poly rest = part;
        Poly h = poly::mod(F, x, rest);
        for (int i = 1; deg(rest) >= 2 * i; ++i) {
            h = poly::frobenius(F, h, rest);
            Poly g = poly::gcd(F, rest, poly::sub(F, h, x));
            if (deg(g) > 0) {
                std::vector<Poly> pieces;
                equal_degree(F, g, i, rng, pieces);
                for (auto& pc : pieces) all.emplace_back(poly::monic(F, pc), mult);
                rest = poly::divmod(F, rest, g).first;
                h = poly::mod(F, h, rest);
            }
        }
        if (deg(rest) > 0) all.emplace_back(poly::monic(F, rest), mult);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    for (auto& fm : all) {
        if (!prof.factors.empty() && prof.factors.back().first == fm.first)
            prof.factors.back().second += fm.second;
        else
            prof.factors.push_back(fm);
    }
    return prof;
}

Poly expand(const Field& F, const FactorProfile& prof) {
    Poly r{1};
    for (auto& [P, c] : prof.factors)
        for (int i = 0; i < c; ++i) r = poly::mul(F, r, P);
    return r;
}

// ---------------------------------------------------------------------------
// Integers

namespace {

int bit_length(u128 n) {
    int b = 0;
    while (n) {
        ++b;
        n >>= 1;
    }
    return b;
}

u128 mulmod128(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    const u128 two64 = static_cast<u128>(1) << 64;
    if (m <= two64) return a * b % m;
    if (m <= (static_cast<u128>(1) << 96)) {
        // Horner over 32-bit chunks of b; every intermediate stays below 2^128.
        u128 r = 0;
        for (int shift = 64; shift >= 0; shift -= 32) {
            u128 chunk = (b >> shift) & 0xffffffffULL;
            r = (r << 32) % m;
            r = (r + a * chunk % m) % m;
        }
        return r;
    }
    u128 r = 0;
    while (b) {
        if (b & 1) {
            r += a;
            if (r >= m || r < a) r -= m;
        }
        b >>= 1;
        u128 a2 = a + a;
        a = (a2 >= m || a2 < a) ? a2 - m : a2;
    }
    return r;
}

u128 powmod128(u128 a, u128 e, u128 m) {
    u128 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod128(r, a, m);
        a = mulmod128(a, a, m);
        e >>= 1;
    }
    return r;
}

bool probable_prime(u128 n) {
    if (n < 2) return false;
    static const unsigned small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    for (unsigned p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u128 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (unsigned a : small) {
        u128 x = powmod128(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod128(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u128 rho(u128 n) {
    if (n % 2 == 0) return 2;
    for (u128 c = 1;; ++c) {
        u128 y = 2, x = 2, g = 1, q = 1, ys = 2;
        std::uint64_t r = 1;
        const std::uint64_t m = 128;
        auto f = [&](u128 v) { return (mulmod128(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod128(q, x > y ? x - y : y - x, n);
                }
                g = gcd128(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd128(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(u128 n, std::vector<u128>& primes) {
    if (n == 1) return;
    if (probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    u128 d = rho(n);
    split(d, primes);
    split(n / d, primes);
}

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        const std::uint32_t N = 1000000;
        std::vector<bool> comp(N + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= N; ++i) {
            if (comp[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= N; j += i) comp[j] = true;
        }
        return out;
    }();
    return primes;
}

}  // namespace

std::vector<IntFactor> factor_integer(u128 n, int bit_bound) {
    if (bit_length(n) > bit_bound)
        throw FactorizationTooLarge("integer has " + std::to_string(bit_length(n)) + " bits");
    std::vector<IntFactor> out;
    if (n <= 1) return out;
    for (std::uint32_t p : small_primes()) {
        if (static_cast<u128>(p) * p > n) break;
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) {
        std::vector<u128> big;
        split(n, big);
        std::sort(big.begin(), big.end());
        for (u128 p : big) {
            if (!out.empty() && out.back().prime == p)
                ++out.back().exponent;
            else
                out.push_back({p, 1});
        }
    }
    std::sort(out.begin(), out.end(), [](const IntFactor& a, const IntFactor& b) { return a.prime < b.prime; });
    return out;
}

u128 ppd_phi(std::uint32_t m, std::uint64_t q, int bit_bound) {
    if (m < 1 || q < 2) throw Error("ppd_phi: need m >= 1 and q >= 2");
    u128 qm = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (bit_length(qm) + bit_length(q) > 127)
            throw FactorizationTooLarge("q^m does not fit");
        qm *= q;
    }
    u128 N = qm - 1;
    u128 phi = 1;
    for (auto [r, e] : factor_integer(N, bit_bound)) {
        bool primitive = true;
        u128 t = q % r, x = 1;
        for (std::uint32_t i = 1; i < m; ++i) {
            x = mulmod128(x, t, r);
            if (x == 1) {
                primitive = false;
                break;
            }
        }
        if (!primitive) continue;
        for (int k = 0; k < e; ++k) phi *= r;
    }
    return phi;
}

bool ppd_witness(const Field& F, const Poly& P1, int bit_bound) {
    int m = deg(P1);
    if (m < 1) throw Error("ppd_witness: degree must be positive");
    u128 phi = ppd_phi(static_cast<std::uint32_t>(m), F.q(), bit_bound);
    u128 qm = 1;
    for (int i = 0; i < m; ++i) qm *= F.q();
    u128 e = (qm - 1) / phi;
    Poly r = poly::powmod(F, poly::x_power(F, 1), e, P1);
    return !(r.size() == 1 && r[0] == 1);
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace slrec
