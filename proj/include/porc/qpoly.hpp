#pragma once

// Polynomials in one variable with exact rational coefficients, and interpolation through
// integer sample points.

#include "porc/core.hpp"

#include <map>
#include <string>
#include <vector>

namespace porc {

struct QPoly {
    std::vector<Rational> c;  // low -> high, no trailing zeros

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    Rational eval(const Rational& x) const {
        Rational r = 0;
        for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }

    /// Evaluates at an integer and insists on an integral value.
    BigInt eval_int(const BigInt& x) const {
        const Rational r = eval(Rational(x));
        if (boost::multiprecision::denominator(r) != 1)
            throw InternalInconsistency("polynomial takes a non-integral value at " + x.str());
        return boost::multiprecision::numerator(r);
    }

    bool operator==(const QPoly& o) const { return c == o.c; }

    /// Human-readable form in the variable name v, highest degree first.
    std::string str(const std::string& v = "q") const {
        if (c.empty()) return "0";
        std::string s;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] == 0) continue;
            Rational a = c[i];
            const bool negative = a < 0;
            if (negative) a = -a;
            if (!s.empty()) s += negative ? " - " : " + ";
            else if (negative) s += "-";
            const bool one = a == 1;
            if (!one || i == 0) s += a.str();
            if (i >= 1) s += (one ? "" : "*") + v;
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

    /// Coefficients as "num/den" strings.
    std::vector<std::string> coefficient_strings() const {
        std::vector<std::string> out;
        for (const auto& a : c)
            out.push_back(boost::multiprecision::numerator(a).str() + "/" + boost::multiprecision::denominator(a).str());
        return out;
    }
};

/// The unique polynomial of degree < xs.size() through the points (Newton divided differences).
inline QPoly interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys) {
    if (xs.size() != ys.size()) throw DomainError("interpolate: size mismatch");
    const std::size_t n = xs.size();
    std::vector<Rational> dd(ys.begin(), ys.end());
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            if (xs[i] == xs[i - j]) throw DomainError("interpolate: repeated abscissa");
            dd[i] = (dd[i] - dd[i - 1]) / Rational(xs[i] - xs[i - j]);
            if (i == j) break;
        }
    // Expand Newton form into monomials.
    std::vector<Rational> coef(n, Rational(0));
    std::vector<Rational> basis{Rational(1)};  // prod_{k<i} (x - x_k)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < basis.size(); ++k) coef[k] += dd[i] * basis[k];
        std::vector<Rational> next(basis.size() + 1, Rational(0));
        for (std::size_t k = 0; k < basis.size(); ++k) {
            next[k + 1] += basis[k];
            next[k] -= basis[k] * Rational(xs[i]);
        }
        basis = std::move(next);
    }
    QPoly p{coef};
    p.trim();
    return p;
}

/// Sample prime powers used for interpolation in q, in increasing order.
inline std::vector<std::uint64_t> prime_powers_from(std::uint64_t start, std::size_t count) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = start; out.size() < count; ++x) {
        std::uint64_t p;
        unsigned d;
        if (prime_power(x, p, d)) out.push_back(x);
    }
    return out;
}

/// Interpolates f from 1 + degree_bound samples and validates against one further point;
/// a mismatch means f is not polynomial of that degree, which callers treat as a bug.
template <class Fn>
QPoly interpolate_validated(Fn&& f, int degree_bound, const char* what) {
    const auto pts = prime_powers_from(2, static_cast<std::size_t>(degree_bound) + 2);
    std::vector<BigInt> xs, ys;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        xs.emplace_back(pts[i]);
        ys.push_back(f(pts[i]));
    }
    QPoly p = interpolate(xs, ys);
    const BigInt held = f(pts.back());
    if (p.eval(Rational(BigInt(pts.back()))) != Rational(held))
        throw InternalInconsistency(std::string(what) + ": interpolant misses held-out point q=" + std::to_string(pts.back()));
    return p;
}

}  // namespace porc
