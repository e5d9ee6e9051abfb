#pragma once

// Finite fields F_q (q = p^d) and univariate polynomials over them.
//
// Elements are packed as integers: the coordinate vector (c_0, ..., c_{d-1}) with respect to
// the basis 1, x, ..., x^{d-1} of F_p[x]/(modulus) is stored as sum c_i p^i. For d = 1 this is
// just the residue mod p.

#include "porc/core.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace porc {

namespace detail {

using PrimePoly = std::vector<std::uint32_t>;  // coefficients low -> high over F_p

inline void trim(PrimePoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // p prime, a != 0 mod p
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t qq = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
        std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
    }
    if (r != 1) throw DomainError("element is not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(t);
}

inline PrimePoly prime_poly_mod(PrimePoly a, const PrimePoly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::uint64_t f = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - f) * m[i]) % p);
        trim(a);
    }
    return a;
}

inline bool prime_poly_irreducible(const PrimePoly& f, std::uint32_t p) {
    const std::size_t d = f.size() - 1;
    if (d <= 1) return d == 1;
    // Trial division by every monic polynomial of degree 1..d/2.
    for (std::size_t e = 1; e <= d / 2; ++e) {
        const std::uint64_t count = pow_u64(p, static_cast<unsigned>(e));
        for (std::uint64_t code = 0; code < count; ++code) {
            PrimePoly g(e + 1);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < e; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[e] = 1;
            if (prime_poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

/// F_q for a prime power q. Instances are obtained through Field::get and live for the
/// whole process; they are immutable and safe to share between threads.
class Field {
public:
    using Elem = std::uint32_t;

    static const Field& get(std::uint64_t q) {
        static std::mutex mu;
        static std::map<std::uint64_t, std::unique_ptr<Field>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(q);
        if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<Field>(new Field(q))).first;
        return *it->second;
    }

    std::uint32_t p() const { return p_; }
    unsigned degree() const { return d_; }
    std::uint32_t q() const { return q_; }
    /// Monic irreducible over F_p defining the extension (x for d = 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const {
        if (d_ == 1) {
            const Elem s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        return add_[a * q_ + b];
    }
    Elem neg(Elem a) const {
        if (d_ == 1) return a == 0 ? 0 : p_ - a;
        return neg_[a];
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (d_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
        return mul_[a * q_ + b];
    }
    Elem inv(Elem a) const {
        if (a == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
        if (d_ == 1) return detail::inv_mod(a, p_);
        return inv_[a];
    }
    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    /// Image of an integer in the prime subfield.
    Elem from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<Elem>(r);
    }
    std::vector<std::uint32_t> coords(Elem a) const {
        std::vector<std::uint32_t> c(d_);
        for (unsigned i = 0; i < d_; ++i) {
            c[i] = a % p_;
            a /= p_;
        }
        return c;
    }
    Elem from_coords(const std::vector<std::uint32_t>& c) const {
        Elem a = 0;
        for (unsigned i = d_; i-- > 0;) a = a * p_ + (i < c.size() ? c[i] % p_ : 0);
        return a;
    }

private:
    explicit Field(std::uint64_t q) {
        std::uint64_t p;
        unsigned d;
        if (!prime_power(q, p, d)) throw DomainError(std::to_string(q) + " is not a prime power");
        if (q > (1u << 16)) throw DomainError("field size too large: " + std::to_string(q));
        p_ = static_cast<std::uint32_t>(p);
        d_ = d;
        q_ = static_cast<std::uint32_t>(q);
        if (d_ == 1) {
            modulus_ = {0, 1};
            return;
        }
        if (q_ > 1024) throw DomainError("extension fields are limited to q <= 1024");
        // Least monic irreducible of degree d in the integer order of its coefficient code.
        const std::uint64_t count = pow_u64(p_, d_);
        for (std::uint64_t code = 0; code < count; ++code) {
            detail::PrimePoly f(d_ + 1);
            std::uint64_t c = code;
            for (unsigned i = 0; i < d_; ++i) {
                f[i] = static_cast<std::uint32_t>(c % p_);
                c /= p_;
            }
            f[d_] = 1;
            if (detail::prime_poly_irreducible(f, p_)) {
                modulus_ = f;
                break;
            }
        }
        add_.resize(static_cast<std::size_t>(q_) * q_);
        mul_.resize(static_cast<std::size_t>(q_) * q_);
        neg_.resize(q_);
        inv_.assign(q_, 0);
        for (Elem a = 0; a < q_; ++a) {
            const auto ca = coords(a);
            std::vector<std::uint32_t> cn(d_);
            for (unsigned i = 0; i < d_; ++i) cn[i] = ca[i] == 0 ? 0 : p_ - ca[i];
            neg_[a] = from_coords(cn);
            for (Elem b = 0; b < q_; ++b) {
                const auto cb = coords(b);
                std::vector<std::uint32_t> cs(d_);
                for (unsigned i = 0; i < d_; ++i) cs[i] = (ca[i] + cb[i]) % p_;
                add_[a * q_ + b] = from_coords(cs);
                detail::PrimePoly prod(2 * d_, 0);
                for (unsigned i = 0; i < d_; ++i)
                    for (unsigned j = 0; j < d_; ++j)
                        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
                auto red = detail::prime_poly_mod(prod, modulus_, p_);
                red.resize(d_, 0);
                const Elem m = from_coords(red);
                mul_[a * q_ + b] = m;
                if (m == 1) inv_[a] = b;
            }
        }
    }

    std::uint32_t p_ = 0;
    unsigned d_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_;
};

/// Polynomial over F_q, coefficients low -> high, no trailing zeros (zero polynomial = empty).
struct UniPoly {
    std::vector<Field::Elem> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool operator==(const UniPoly&) const = default;
    auto operator<=>(const UniPoly&) const = default;
};

namespace poly {

inline void trim(UniPoly& a) {
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

inline UniPoly constant(Field::Elem v) {
    UniPoly r;
    if (v != 0) r.c = {v};
    return r;
}

inline UniPoly add(const Field& F, const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = F.add(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
    trim(r);
    return r;
}

inline UniPoly sub(const Field& F, const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = F.sub(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
    trim(r);
    return r;
}

inline UniPoly mul(const Field& F, const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UniPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    trim(r);
    return r;
}

/// Quotient and remainder; divisor must be nonzero.
inline std::pair<UniPoly, UniPoly> divmod(const Field& F, UniPoly a, const UniPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    UniPoly quot;
    const int db = b.degree();
    const Field::Elem lead_inv = F.inv(b.c.back());
    if (a.degree() >= db) quot.c.assign(static_cast<std::size_t>(a.degree() - db + 1), 0);
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        const Field::Elem f = F.mul(a.c.back(), lead_inv);
        quot.c[static_cast<std::size_t>(shift)] = f;
        for (int i = 0; i <= db; ++i) {
            auto& slot = a.c[static_cast<std::size_t>(shift + i)];
            slot = F.sub(slot, F.mul(f, b.c[static_cast<std::size_t>(i)]));
        }
        trim(a);
    }
    trim(quot);
    return {quot, a};
}

inline UniPoly pow(const Field& F, const UniPoly& a, unsigned e) {
    UniPoly r = constant(1);
    for (unsigned i = 0; i < e; ++i) r = mul(F, r, a);
    return r;
}

/// Monic polynomial of degree d from its packed lower coefficients sum c_i q^i.
inline UniPoly monic_from_code(const Field& F, int d, std::uint64_t code) {
    UniPoly r;
    r.c.resize(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i < d; ++i) {
        r.c[static_cast<std::size_t>(i)] = static_cast<Field::Elem>(code % F.q());
        code /= F.q();
    }
    r.c[static_cast<std::size_t>(d)] = 1;
    return r;
}

inline std::uint64_t code_of(const Field& F, const UniPoly& f) {
    std::uint64_t code = 0;
    for (int i = f.degree() - 1; i >= 0; --i) code = code * F.q() + f.c[static_cast<std::size_t>(i)];
    return code;
}

inline std::string to_string(const Field& F, const UniPoly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        const auto c = f.c[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        const bool unit = c == 1 && i > 0;
        if (!unit) {
            if (F.degree() == 1) {
                s += std::to_string(c);
            } else {
                s += "[";
                const auto co = F.coords(c);
                for (std::size_t k = 0; k < co.size(); ++k) s += (k ? "," : "") + std::to_string(co[k]);
                s += "]";
            }
        }
        if (i >= 1) s += "X";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

}  // namespace poly

/// All monic irreducible polynomials of degree d over F_q, ordered by packed coefficient code.
/// Results are cached per (q, d).
inline const std::vector<UniPoly>& irreducibles(std::uint64_t q, int d) {
    if (d < 1) throw DomainError("irreducibles: degree must be positive");
    const Field& F = Field::get(q);
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, int>, std::vector<UniPoly>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({q, d});
        if (it != cache.end()) return it->second;
    }
    std::vector<UniPoly> out;
    std::uint64_t count;
    if (!checked_pow_u64(q, static_cast<unsigned>(d), count) || count > limits().group_size)
        throw Refusal("irreducibles: q^d candidates exceed cap", big_pow(BigInt(q), static_cast<unsigned>(d)));
    std::vector<const std::vector<UniPoly>*> lower;
    for (int e = 1; e <= d / 2; ++e) lower.push_back(&irreducibles(q, e));
    for (std::uint64_t code = 0; code < count; ++code) {
        UniPoly f = poly::monic_from_code(F, d, code);
        bool irreducible = true;
        for (const auto* list : lower) {
            for (const auto& g : *list) {
                if (poly::divmod(F, f, g).second.is_zero()) {
                    irreducible = false;
                    break;
                }
            }
            if (!irreducible) break;
        }
        if (irreducible) out.push_back(std::move(f));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(q, d), std::move(out)).first->second;
}

/// Irreducibles other than X: the ones that can occur in an invertible matrix.
inline std::uint64_t unit_irreducible_count(std::uint64_t q, int d) {
    const auto n = irreducibles(q, d).size();
    return d == 1 ? n - 1 : n;
}

}  // namespace porc
