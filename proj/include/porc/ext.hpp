#pragma once

// Ext(M_kappa, M_lambda) over Z/p^K two ways: as the cokernel of mu^* for the free
// presentation 0 -> Q -> P -> M_kappa -> 0, and as the tensor product of the dual with B.

#include "porc/dvrmod.hpp"

namespace porc {

/// Cocycle model of Ext(M_kappa, M_lambda): Hom(Q, B) = B^k modulo the image of
/// mu^*: Hom(P, B) -> Hom(Q, B), phi -> phi o mu, with mu = diag(p^{kappa_i}).
/// Ambient coordinates: slot (i, a) holds the a-th coordinate of the image of the i-th basis
/// vector of Q, stored as t^{K - lambda_a} times a residue (as in FiniteModule).
class ExtResolution {
public:
    ExtResolution(Partition kappa, Partition lambda, std::uint64_t p)
        : kappa_(std::move(kappa)), B_(std::move(lambda), Dvr::Kind::Integers, p) {
        const int k = kappa_.length(), s = B_.rank();
        for (int i = 0; i < k; ++i)
            for (int a = 0; a < s; ++a) {
                RVec gen(static_cast<std::size_t>(k * s), 0), img(gen);
                gen[slot(i, a)] = B_.generators()[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
                img[slot(i, a)] = R().mul_t_pow(gen[slot(i, a)], kappa_.parts[static_cast<std::size_t>(i)]);
                hom_q_.push_back(gen);
                image_.push_back(img);
            }
        image_form_ = howell_form(R(), image_, k * s);
    }

    const Dvr& R() const { return B_.ring(); }
    const FiniteModule& B() const { return B_; }
    const Partition& kappa() const { return kappa_; }
    int rank() const { return kappa_.length() * B_.rank(); }
    std::size_t slot(int i, int a) const { return static_cast<std::size_t>(i * B_.rank() + a); }

    /// Generators of Hom(Q, B) and of the image of mu^*.
    const std::vector<RVec>& cocycle_generators() const { return hom_q_; }
    const std::vector<RVec>& coboundary_generators() const { return image_; }

    /// Canonical representative of the Ext class of a cocycle.
    RVec reduce(const RVec& x) const { return howell_reduce(R(), image_form_, x); }

    /// Partition type of the cokernel, from |t^j Hom(Q,B) + im| / |im|.
    Partition type() const {
        if (rank() == 0) return Partition();
        const int K = R().K();
        const int base = image_form_.log_size(K);
        std::vector<int> logs;
        for (int j = 0; j <= K; ++j) {
            std::vector<RVec> g = image_form_.rows;
            for (const auto& x : hom_q_) {
                RVec y(x.size());
                for (std::size_t c = 0; c < x.size(); ++c) y[c] = R().mul_t_pow(x[c], j);
                g.push_back(y);
            }
            logs.push_back(howell_form(R(), g, rank()).log_size(K) - base);
        }
        return partition_from_profile(logs);
    }

    /// Visits every cocycle (element of Hom(Q, B)).
    template <class Fn>
    void for_each_cocycle(Fn&& fn) const {
        const int k = kappa_.length(), s = B_.rank();
        std::vector<std::uint64_t> radix;
        for (int i = 0; i < k; ++i)
            for (int a = 0; a < s; ++a) radix.push_back(R().residues(B_.lambda().parts[static_cast<std::size_t>(a)]));
        RVec c(radix.size(), 0), x(radix.size(), 0);
        for (;;) {
            for (int i = 0; i < k; ++i)
                for (int a = 0; a < s; ++a) {
                    const int la = B_.lambda().parts[static_cast<std::size_t>(a)];
                    x[slot(i, a)] = R().mul_t_pow(c[slot(i, a)], R().K() - la);
                }
            fn(x);
            std::size_t j = 0;
            while (j < c.size() && ++c[j] == radix[j]) c[j++] = 0;
            if (j == c.size()) break;
        }
    }

private:
    Partition kappa_;
    FiniteModule B_;
    std::vector<RVec> hom_q_, image_;
    Howell image_form_;
};

inline Partition ext_via_resolution(const Partition& kappa, const Partition& lambda, std::uint64_t p) {
    if (!is_prime(p)) throw DomainError("ext_via_resolution needs a prime p");
    return ExtResolution(kappa, lambda, p).type();
}

/// Dual of M_kappa (isomorphic to M_kappa) tensored with M_lambda: parts min(kappa_i, lambda_j).
inline Partition ext_hat_tensor(const Partition& kappa, const Partition& lambda, std::uint64_t p) {
    if (!is_prime(p)) throw DomainError("ext_hat_tensor needs a prime p");
    std::vector<int> parts;
    for (int a : kappa.parts)
        for (int b : lambda.parts) parts.push_back(std::min(a, b));
    return Partition(parts);
}

}  // namespace porc
