#pragma once

// Fitting a polynomial-on-residue-classes formula to integer samples at primes, with exact
// rational arithmetic and held-out validation.

#include "porc/qpoly.hpp"

#include <map>

namespace porc {

struct PorcFormula {
    std::uint64_t N = 1;
    int degmax = 0;
    bool accepted = false;
    std::string reason;                                         // why a fit was rejected
    std::map<std::uint64_t, QPoly> classes;                     // residue -> polynomial
    std::map<std::uint64_t, std::vector<std::uint64_t>> fitted;  // residue -> primes used to solve
    std::map<std::uint64_t, std::vector<std::uint64_t>> held;    // residue -> primes validated

    /// Value at p; p must lie in a fitted residue class.
    BigInt eval(std::uint64_t p) const {
        const auto it = classes.find(p % N);
        if (it == classes.end()) throw DomainError("no fitted residue class for p = " + std::to_string(p) + " mod " + std::to_string(N));
        return it->second.eval_int(BigInt(p));
    }

    std::string str() const {
        std::string s;
        for (const auto& [r, f] : classes) s += (s.empty() ? "" : "; ") + std::string("p = ") + std::to_string(r) + " mod " + std::to_string(N) + ": " + f.str("p");
        return s;
    }
};

/// Per residue class mod N: solve on the first degmax + 1 samples, validate on the rest.
/// Refuses if some sampled class has fewer than degmax + 2 samples; a held-out mismatch gives
/// a rejected formula (accepted == false).
inline PorcFormula porc_fit(const std::map<std::uint64_t, BigInt>& samples, std::uint64_t N, int degmax) {
    if (N == 0) throw DomainError("modulus N must be positive");
    if (degmax < 0) throw DomainError("degmax must be nonnegative");
    PorcFormula f;
    f.N = N;
    f.degmax = degmax;
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_class;
    for (const auto& [p, v] : samples) {
        if (!is_prime(p)) throw DomainError("sample at non-prime " + std::to_string(p));
        if (v < 0) throw DomainError("negative sample at p = " + std::to_string(p));
        by_class[p % N].push_back(p);
    }
    for (const auto& [r, ps] : by_class)
        if (static_cast<int>(ps.size()) < degmax + 2)
            throw Refusal("residue class " + std::to_string(r) + " mod " + std::to_string(N) + " has " + std::to_string(ps.size()) +
                              " samples; degree " + std::to_string(degmax) + " needs " + std::to_string(degmax + 2),
                          BigInt(degmax + 2));
    f.accepted = true;
    for (const auto& [r, ps] : by_class) {
        std::vector<BigInt> xs, ys;
        for (int i = 0; i <= degmax; ++i) {
            xs.emplace_back(ps[static_cast<std::size_t>(i)]);
            ys.push_back(samples.at(ps[static_cast<std::size_t>(i)]));
            f.fitted[r].push_back(ps[static_cast<std::size_t>(i)]);
        }
        const QPoly poly = interpolate(xs, ys);
        for (std::size_t i = static_cast<std::size_t>(degmax) + 1; i < ps.size(); ++i) {
            f.held[r].push_back(ps[i]);
            if (f.accepted && poly.eval(Rational(BigInt(ps[i]))) != Rational(samples.at(ps[i]))) {
                f.accepted = false;
                f.reason = "not PORC at N=" + std::to_string(N) + ", degmax=" + std::to_string(degmax) + ": class " + std::to_string(r) +
                           " misses held-out p=" + std::to_string(ps[i]) + "; try a larger N or degmax";
            }
        }
        f.classes[r] = poly;
    }
    return f;
}

/// Smallest modulus dividing maxN (then smallest degree <= degmax) whose fit is accepted.
inline PorcFormula porc_fit_search(const std::map<std::uint64_t, BigInt>& samples, std::uint64_t maxN, int degmax) {
    PorcFormula last;
    last.reason = "no modulus/degree combination had enough samples";
    for (std::uint64_t N = 1; N <= maxN; ++N) {
        if (maxN % N) continue;
        for (int d = 0; d <= degmax; ++d) {
            try {
                PorcFormula f = porc_fit(samples, N, d);
                if (f.accepted) return f;
                last = f;
            } catch (const Refusal&) {
            }
        }
    }
    return last;
}

}  // namespace porc
