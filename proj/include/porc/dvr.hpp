#pragma once

// Finite quotients of discrete valuation rings: Z/p^K and F_q[t]/(t^K).
//
// Elements are packed as integers in [0, q^K): for Z/p^K the residue itself, for F_q[t]/(t^K)
// the coefficients of 1, t, ..., t^{K-1} as base-q digits (each digit a packed F_q element).
// In both cases multiplication by the uniformiser^e is multiplication of the code by q^e
// (mod q^K), reduction mod uniformiser^e is the code mod q^e, and the valuation is the number
// of trailing zero base-q digits.

#include "porc/field.hpp"

namespace porc {

class Dvr {
public:
    enum class Kind { Integers, PowerSeries };
    using Elem = std::uint64_t;

    /// Z/p^K.
    static Dvr integers(std::uint64_t p, int K) {
        if (!is_prime(p)) throw DomainError("Z/p^K needs a prime p, got " + std::to_string(p));
        return Dvr(Kind::Integers, p, K);
    }
    /// F_q[t]/(t^K).
    static Dvr power_series(std::uint64_t q, int K) { return Dvr(Kind::PowerSeries, q, K); }

    Kind kind() const { return kind_; }
    std::uint64_t q() const { return q_; }
    int K() const { return K_; }
    std::uint64_t size() const { return size_; }
    const Field& residue_field() const { return *F_; }
    std::string str() const {
        return kind_ == Kind::Integers ? "Z/" + std::to_string(q_) + "^" + std::to_string(K_)
                                       : "F_" + std::to_string(q_) + "[t]/(t^" + std::to_string(K_) + ")";
    }

    Elem add(Elem a, Elem b) const {
        if (kind_ == Kind::Integers) return (a + b) % size_;
        Elem r = 0, scale = 1;
        for (int i = 0; i < K_; ++i) {
            r += scale * F_->add(static_cast<Field::Elem>(a % q_), static_cast<Field::Elem>(b % q_));
            a /= q_;
            b /= q_;
            scale *= q_;
        }
        return r;
    }
    Elem neg(Elem a) const {
        if (kind_ == Kind::Integers) return a == 0 ? 0 : size_ - a;
        Elem r = 0, scale = 1;
        for (int i = 0; i < K_; ++i) {
            r += scale * F_->neg(static_cast<Field::Elem>(a % q_));
            a /= q_;
            scale *= q_;
        }
        return r;
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (kind_ == Kind::Integers) return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % size_);
        Field::Elem da[16], db[16], dr[16];
        for (int i = 0; i < K_; ++i) {
            da[i] = static_cast<Field::Elem>(a % q_);
            db[i] = static_cast<Field::Elem>(b % q_);
            dr[i] = 0;
            a /= q_;
            b /= q_;
        }
        for (int i = 0; i < K_; ++i) {
            if (da[i] == 0) continue;
            for (int j = 0; i + j < K_; ++j) dr[i + j] = F_->add(dr[i + j], F_->mul(da[i], db[j]));
        }
        Elem r = 0;
        for (int i = K_; i-- > 0;) r = r * q_ + dr[i];
        return r;
    }

    /// Valuation; K for zero.
    int valuation(Elem a) const {
        if (a == 0) return K_;
        int v = 0;
        while (a % q_ == 0) {
            a /= q_;
            ++v;
        }
        return v;
    }
    bool is_unit(Elem a) const { return a % q_ != 0; }

    /// Image of the uniformiser^e (0 when e >= K).
    Elem t_pow(int e) const { return e >= K_ ? 0 : pow_q_[static_cast<std::size_t>(e)]; }
    Elem mul_t_pow(Elem a, int e) const { return e >= K_ ? 0 : a * pow_q_[static_cast<std::size_t>(e)] % size_; }
    /// a / uniformiser^e, defined modulo uniformiser^{K-e}; requires valuation(a) >= e.
    Elem div_t_pow(Elem a, int e) const { return e >= K_ ? 0 : a / pow_q_[static_cast<std::size_t>(e)]; }
    /// Canonical residue of a modulo uniformiser^e.
    Elem mod_t_pow(Elem a, int e) const { return e >= K_ ? a : a % pow_q_[static_cast<std::size_t>(e)]; }
    /// Number of residues modulo uniformiser^e.
    std::uint64_t residues(int e) const { return e >= K_ ? size_ : pow_q_[static_cast<std::size_t>(e)]; }
    /// Reduction to the residue field.
    Field::Elem residue(Elem a) const { return static_cast<Field::Elem>(a % q_); }
    /// Teichmueller-free lift of a residue-field element (the digit itself).
    Elem lift(Field::Elem a) const { return a; }

    Elem inv(Elem a) const {
        if (!is_unit(a)) throw DomainError("inverse of a non-unit in " + str());
        if (kind_ == Kind::Integers) return detail::inv_mod(a, size_);
        // Solve a * b = 1 digit by digit.
        Field::Elem da[16], db[16];
        Elem x = a;
        for (int i = 0; i < K_; ++i) {
            da[i] = static_cast<Field::Elem>(x % q_);
            x /= q_;
        }
        const Field::Elem a0inv = F_->inv(da[0]);
        for (int k = 0; k < K_; ++k) {
            Field::Elem acc = k == 0 ? 1 : 0;
            for (int i = 1; i <= k; ++i) acc = F_->sub(acc, F_->mul(da[i], db[k - i]));
            db[k] = F_->mul(acc, a0inv);
        }
        Elem r = 0;
        for (int i = K_; i-- > 0;) r = r * q_ + db[i];
        return r;
    }

    bool operator==(const Dvr& o) const { return kind_ == o.kind_ && q_ == o.q_ && K_ == o.K_; }

private:
    Dvr(Kind kind, std::uint64_t q, int K) : kind_(kind), q_(q), K_(K) {
        if (K < 1 || K > 15) throw DomainError("DVR quotient exponent out of range");
        F_ = &Field::get(q);
        if (!checked_pow_u64(q, static_cast<unsigned>(K), size_) || size_ > (1ULL << 40))
            throw DomainError("DVR quotient too large");
        for (int e = 0; e <= K; ++e) pow_q_.push_back(pow_u64(q, static_cast<unsigned>(e)));
    }

    Kind kind_;
    std::uint64_t q_;
    int K_;
    std::uint64_t size_ = 0;
    const Field* F_ = nullptr;
    std::vector<std::uint64_t> pow_q_;
};

/// The quotient ring used for sampling at q: Z/p^K when q is prime, F_q[t]/(t^K) otherwise.
inline Dvr sample_ring(std::uint64_t q, int K) {
    return is_prime(q) ? Dvr::integers(q, K) : Dvr::power_series(q, K);
}

}  // namespace porc
