#include "porc/ext.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace porc;

namespace {

std::vector<Partition> partitions_upto(int n) {
    std::vector<Partition> out;
    for (int k = 0; k <= n; ++k)
        for (const auto& p : partitions_of(k)) out.push_back(p);
    return out;
}

int min_sum(const Partition& a, const Partition& b) {
    int s = 0;
    for (int x : a.parts)
        for (int y : b.parts) s += std::min(x, y);
    return s;
}

// Cycle count of a permutation given as a map on indices.
std::size_t cycles(const std::vector<std::size_t>& perm) {
    std::vector<bool> seen(perm.size(), false);
    std::size_t c = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++c;
        for (std::size_t j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }
    return c;
}

}  // namespace

TEST(Ext, CyclicExamples) {
    for (std::uint64_t p : {2, 3})
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b) EXPECT_EQ(ext_via_resolution(Partition{a}, Partition{b}, p), Partition{std::min(a, b)});
    EXPECT_EQ(ext_via_resolution(Partition(), Partition{2, 1}, 3), Partition());
    EXPECT_EQ(ext_via_resolution(Partition{1, 1}, Partition{2}, 3), (Partition{1, 1}));
    EXPECT_EQ(ext_hat_tensor(Partition{1}, Partition{1}, 5), Partition{1});
    EXPECT_EQ(ext_hat_tensor(Partition{2}, Partition{1}, 5), Partition{1});
    EXPECT_EQ(ext_hat_tensor(Partition(), Partition{1}, 5), Partition());
    EXPECT_THROW(ext_via_resolution(Partition{1}, Partition{1}, 4), DomainError);
}

TEST(Ext, TwoComputationsAgree) {
    for (std::uint64_t p : {2, 3, 5})
        for (const auto& kappa : partitions_upto(4))
            for (const auto& lambda : partitions_upto(4)) {
                const Partition a = ext_via_resolution(kappa, lambda, p);
                EXPECT_EQ(a, ext_hat_tensor(kappa, lambda, p)) << kappa.str() << " " << lambda.str() << " p=" << p;
                EXPECT_EQ(a.weight(), min_sum(kappa, lambda));
            }
}

TEST(Ext, ReductionIsCanonical) {
    for (std::uint64_t p : {2, 3})
        for (const auto& [kappa, lambda] : std::vector<std::pair<Partition, Partition>>{
                 {Partition{1, 1}, Partition{2, 1}}, {Partition{2}, Partition{1, 1}}, {Partition{2, 1}, Partition{2}}}) {
            const ExtResolution E(kappa, lambda, p);
            std::set<RVec> classes;
            E.for_each_cocycle([&](const RVec& x) {
                const RVec r = E.reduce(x);
                classes.insert(r);
                for (const auto& b : E.coboundary_generators()) {
                    RVec y(x);
                    for (std::size_t j = 0; j < y.size(); ++j) y[j] = E.R().add(y[j], b[j]);
                    EXPECT_EQ(E.reduce(y), r);
                }
            });
            EXPECT_EQ(BigInt(classes.size()), big_pow(BigInt(p), static_cast<unsigned>(E.type().weight())));
        }
}

// The Ext classes for A = (Z/p)^m, computed from cocycles, are permuted by (g, h) exactly as
// Hom(V, B/pB) is permuted by z -> h_bar z g^{-1}: equal cycle counts for random pairs.
TEST(Ext, EquivarianceAgainstHomModel) {
    std::mt19937_64 rng(17);
    const std::uint64_t p = 3;
    for (const auto& lambda : {Partition{1}, Partition{2}, Partition{2, 1}, Partition{1, 1}}) {
        const int m = 2;
        const ExtResolution E(ones(m), lambda, p);
        const FiniteModule& B = E.B();
        const Dvr& R = E.R();
        const int s = B.rank(), K = R.K();
        std::vector<AutMatrix> auts;
        aut_generate(B, [&](const AutMatrix& h) { auts.push_back(h); });
        const Field& F = Field::get(p);
        std::map<RVec, std::size_t> index;
        std::vector<RVec> reps;
        E.for_each_cocycle([&](const RVec& x) {
            const RVec r = E.reduce(x);
            if (index.emplace(r, reps.size()).second) reps.push_back(r);
        });
        for (int trial = 0; trial < 100; ++trial) {
            const Mat g = mat::random_invertible(F, m, rng);
            const Mat gi = mat::inverse(F, g);
            const AutMatrix& h = auts[std::uniform_int_distribution<std::size_t>(0, auts.size() - 1)(rng)];
            // Cocycle action psi -> h o psi o g~^{-1}, g~ the integer lift of g.
            std::vector<std::size_t> perm_ext(reps.size());
            for (std::size_t r = 0; r < reps.size(); ++r) {
                RVec out(reps[r].size(), 0);
                for (int i = 0; i < m; ++i) {
                    RVec acc(static_cast<std::size_t>(s), 0);
                    for (int j = 0; j < m; ++j)
                        for (int a = 0; a < s; ++a) {
                            const int la = lambda.parts[static_cast<std::size_t>(a)];
                            const Dvr::Elem c = R.div_t_pow(reps[r][E.slot(j, a)], K - la);
                            acc[static_cast<std::size_t>(a)] = R.add(acc[static_cast<std::size_t>(a)], R.mul(gi.at(j, i), c));
                        }
                    const RVec img = aut::apply(B, h, acc);
                    for (int a = 0; a < s; ++a) {
                        const int la = lambda.parts[static_cast<std::size_t>(a)];
                        out[E.slot(i, a)] = R.mul_t_pow(R.mod_t_pow(img[static_cast<std::size_t>(a)], la), K - la);
                    }
                }
                perm_ext[r] = index.at(E.reduce(out));
            }
            // Hom model on s x m matrices over F_p.
            const Mat Y = beta_of(B, h).Y;
            const std::uint64_t count = pow_u64(p, static_cast<unsigned>(s * m));
            std::vector<std::size_t> perm_hom(count);
            for (std::uint64_t code = 0; code < count; ++code) {
                Mat z(s, m);
                std::uint64_t c = code;
                for (auto& e : z.a) {
                    e = static_cast<Field::Elem>(c % p);
                    c /= p;
                }
                const Mat w = mat::mul(F, mat::mul(F, Y, z), gi);
                std::uint64_t out = 0;
                for (std::size_t k = w.a.size(); k-- > 0;) out = out * p + w.a[k];
                perm_hom[code] = out;
            }
            ASSERT_EQ(reps.size(), perm_hom.size());
            EXPECT_EQ(cycles(perm_ext), cycles(perm_hom)) << lambda.str();
        }
    }
}
