#pragma once

// Shared vocabulary: exact integer types, error classes and enumeration caps.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace porc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Precondition on an argument was violated (non-prime-power q, singular matrix, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation was declined because it would exceed a configured size cap.
class Refusal : public std::runtime_error {
public:
    Refusal(const std::string& what, BigInt estimate)
        : std::runtime_error(what), estimate_(std::move(estimate)) {}
    const BigInt& estimate() const { return estimate_; }

private:
    BigInt estimate_;
};

/// An exactness or consistency check failed; this indicates a bug, never bad input.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Enumeration caps. Set once at startup (the CLI does this from flags/env).
struct Limits {
    // Iterations of a group enumeration (|P| * |Aut|, |GL_n(q)| candidates, ...).
    std::uint64_t group_size = 100'000'000ULL;
    // Elements of a module whose submodule lattice is enumerated.
    std::uint64_t module_size = 300'000ULL;
    // Bracket tables visited by the brute-force Lie ring enumerator.
    std::uint64_t table_count = 5'000'000ULL;
};

inline Limits& limits() {
    static Limits l;
    return l;
}

inline BigInt big_pow(const BigInt& base, unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

/// Overflow-checked 64-bit power; returns nullopt-like max on overflow.
inline bool checked_pow_u64(std::uint64_t base, unsigned e, std::uint64_t& out) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(r, base, &r)) return false;
    }
    out = r;
    return true;
}

inline std::uint64_t pow_u64(std::uint64_t base, unsigned e) {
    std::uint64_t r;
    if (!checked_pow_u64(base, e, r)) throw DomainError("integer power overflows 64 bits");
    return r;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Writes q = p^d; returns false when q is not a prime power.
inline bool prime_power(std::uint64_t q, std::uint64_t& p, unsigned& d) {
    if (q < 2) return false;
    std::uint64_t f = 2;
    while (f * f <= q && q % f != 0) ++f;
    if (q % f != 0) f = q;
    p = f;
    d = 0;
    while (q % f == 0) {
        q /= f;
        ++d;
    }
    return q == 1;
}

inline std::vector<int> first_primes_from(int start, int count) {
    std::vector<int> out;
    for (int n = start; static_cast<int>(out.size()) < count; ++n)
        if (is_prime(static_cast<std::uint64_t>(n))) out.push_back(n);
    return out;
}

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

/// a / b, throwing InternalInconsistency unless the division is exact.
inline BigInt exact_div(const BigInt& a, const BigInt& b, const char* where) {
    if (b == 0) throw InternalInconsistency(std::string(where) + ": division by zero");
    BigInt q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0)
        throw InternalInconsistency(std::string(where) + ": non-exact division " + a.str() + " / " +
                                    b.str());
    return q;
}

inline void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace porc
