#include "porc/dvrmod.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace porc;

namespace {

// Element-set oracle: all submodules of M_lambda as sets of ambient vectors, by closing every
// tuple of rank(M) elements under addition and multiplication by t and by residue digits.
std::map<std::pair<Partition, Partition>, std::uint64_t> brute_hall_table(const Partition& lambda, const Dvr& R0) {
    const FiniteModule M(lambda, R0);
    const Dvr& R = M.ring();
    std::vector<RVec> elems;
    M.for_each_element([&](const RVec& v) { elems.push_back(v); });
    std::map<RVec, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
    auto add = [&](const RVec& a, const RVec& b) {
        RVec r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = R.add(a[i], b[i]);
        return r;
    };
    auto scale = [&](Dvr::Elem c, const RVec& a) {
        RVec r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = R.mul(c, a[i]);
        return r;
    };
    std::set<std::vector<bool>> subs;
    const int s = M.rank();
    std::vector<std::size_t> pick(static_cast<std::size_t>(s), 0);
    for (;;) {
        std::vector<bool> in(elems.size(), false);
        std::vector<RVec> stack;
        auto push = [&](const RVec& v) {
            const auto i = index.at(v);
            if (!in[i]) {
                in[i] = true;
                stack.push_back(v);
            }
        };
        push(RVec(static_cast<std::size_t>(s), 0));
        for (auto i : pick) push(elems[i]);
        while (!stack.empty()) {
            const RVec v = stack.back();
            stack.pop_back();
            push(scale(R.t_pow(1), v));
            for (Dvr::Elem d = 1; d < R.q(); ++d) push(scale(d, v));
            for (std::size_t j = 0; j < elems.size(); ++j)
                if (in[j]) push(add(v, elems[j]));
        }
        subs.insert(in);
        std::size_t a = 0;
        while (a < pick.size() && ++pick[a] == elems.size()) pick[a++] = 0;
        if (a == pick.size()) break;
    }
    // Classify by counting t^k N and t^k M + N as element sets.
    auto log_q = [&](std::size_t n) {
        int e = 0;
        while (n > 1) {
            n /= R.q();
            ++e;
        }
        return e;
    };
    std::map<std::pair<Partition, Partition>, std::uint64_t> out;
    for (const auto& in : subs) {
        std::vector<int> sub_logs, quo_logs;
        std::size_t nsize = 0;
        for (bool b : in) nsize += b;
        for (int k = 0; k <= R.K(); ++k) {
            std::set<RVec> tk, tkm;
            for (std::size_t j = 0; j < elems.size(); ++j) {
                const RVec v = scale(R.t_pow(k), elems[j]);
                if (in[j]) tk.insert(v);
                for (std::size_t i = 0; i < elems.size(); ++i)
                    if (in[i]) tkm.insert(add(v, elems[i]));
            }
            sub_logs.push_back(log_q(tk.size()));
            quo_logs.push_back(log_q(tkm.size()) - log_q(nsize));
        }
        auto profile = [](const std::vector<int>& logs) {
            std::vector<int> parts;
            for (std::size_t k = 0; k + 1 < logs.size(); ++k) {
                const int c = logs[k] - logs[k + 1];
                for (int i = static_cast<int>(parts.size()); i < c; ++i) parts.push_back(0);
                for (int i = 0; i < c; ++i) ++parts[static_cast<std::size_t>(i)];
            }
            return Partition(parts);
        };
        ++out[{profile(sub_logs), profile(quo_logs)}];
    }
    return out;
}

// Homomorphisms are determined by images x_b of generators with t^{l_b} x_b = 0; count the
// bijective ones by brute force over element images.
std::uint64_t brute_aut_count(const Partition& lambda, const Dvr& R0) {
    const FiniteModule M(lambda, R0);
    const Dvr& R = M.ring();
    const int s = M.rank();
    std::vector<RVec> coords;
    {
        std::vector<std::uint64_t> radix;
        for (int x : lambda.parts) radix.push_back(R.residues(x));
        RVec c(static_cast<std::size_t>(s), 0);
        for (;;) {
            coords.push_back(c);
            int a = 0;
            while (a < s && ++c[static_cast<std::size_t>(a)] == radix[static_cast<std::size_t>(a)]) c[static_cast<std::size_t>(a++)] = 0;
            if (a == s) break;
        }
    }
    std::vector<std::vector<RVec>> allowed(static_cast<std::size_t>(s));
    for (int b = 0; b < s; ++b)
        for (const auto& x : coords) {
            bool killed = true;
            for (int a = 0; a < s; ++a)
                killed &= R.mod_t_pow(R.mul_t_pow(x[static_cast<std::size_t>(a)], lambda.parts[static_cast<std::size_t>(b)]),
                                      lambda.parts[static_cast<std::size_t>(a)]) == 0;
            if (killed) allowed[static_cast<std::size_t>(b)].push_back(x);
        }
    std::uint64_t count = 0;
    std::vector<std::size_t> pick(static_cast<std::size_t>(s), 0);
    for (;;) {
        std::set<RVec> image;
        for (const auto& c : coords) {
            RVec v(static_cast<std::size_t>(s), 0);
            for (int b = 0; b < s; ++b)
                for (int a = 0; a < s; ++a) {
                    auto& slot = v[static_cast<std::size_t>(a)];
                    slot = R.mod_t_pow(R.add(slot, R.mul(c[static_cast<std::size_t>(b)], allowed[static_cast<std::size_t>(b)][pick[static_cast<std::size_t>(b)]][static_cast<std::size_t>(a)])),
                                       lambda.parts[static_cast<std::size_t>(a)]);
                }
            image.insert(v);
        }
        count += image.size() == coords.size();
        std::size_t b = 0;
        while (b < pick.size() && ++pick[b] == allowed[b].size()) pick[b++] = 0;
        if (b == pick.size()) break;
    }
    return count;
}

}  // namespace

TEST(Hall, Examples) {
    EXPECT_EQ(hall_number({1, 1}, {1}, {1}, Dvr::integers(2, 1)), 3u);
    for (std::uint64_t p : {2, 3, 5}) EXPECT_EQ(hall_number({2}, {1}, {1}, Dvr::integers(p, 2)), 1u);
    EXPECT_EQ(hall_number({2}, {1}, {2}, Dvr::integers(3, 2)), 0u);
}

TEST(Hall, MatchesElementSetOracle) {
    const std::vector<std::pair<Partition, Dvr>> cases = {
        {{1, 1}, Dvr::integers(2, 1)}, {{2, 1}, Dvr::integers(2, 2)},    {{2, 1}, Dvr::power_series(2, 2)},
        {{1, 1, 1}, Dvr::integers(2, 1)}, {{2, 2}, Dvr::integers(2, 2)}, {{3, 1}, Dvr::integers(2, 3)},
        {{2, 1}, Dvr::integers(3, 2)},    {{1, 1}, Dvr::power_series(4, 1)}, {{2, 1, 1}, Dvr::integers(2, 2)},
    };
    for (const auto& [lambda, R] : cases) {
        const auto oracle = brute_hall_table(lambda, R);
        const auto& table = hall_table(lambda, R.kind(), R.q());
        EXPECT_EQ(table.size(), oracle.size()) << lambda.str() << " " << R.str();
        for (const auto& [k, v] : oracle) {
            auto it = table.find(k);
            ASSERT_NE(it, table.end()) << lambda.str() << k.first.str() << k.second.str();
            EXPECT_EQ(it->second, v) << lambda.str() << " " << R.str() << " " << k.first.str() << k.second.str();
        }
    }
}

TEST(Hall, SymmetricAndRingIndependent) {
    for (std::uint64_t p : {2, 3})
        for (int n = 1; n <= 3; ++n)
            for (const auto& lambda : partitions_of(n))
                for (int k = 0; k <= n; ++k)
                    for (const auto& mu : partitions_of(k))
                        for (const auto& nu : partitions_of(n - k)) {
                            const Dvr Z = Dvr::integers(p, lambda.largest());
                            const Dvr T = Dvr::power_series(p, lambda.largest());
                            EXPECT_EQ(hall_number(lambda, mu, nu, Z), hall_number(lambda, mu, nu, T));
                            EXPECT_EQ(hall_number(lambda, mu, nu, Z), hall_number(lambda, nu, mu, Z));
                        }
}

TEST(Hall, ChainCounts) {
    EXPECT_EQ(chain_count({2, 1}, {{2, 1}}, Dvr::integers(2, 2)), BigInt(1));
    EXPECT_EQ(chain_count({1, 1}, {{1}, {1}}, Dvr::integers(3, 1)), BigInt(4));
    EXPECT_EQ(chain_count({1, 1}, {{1}, {1, 1}}, Dvr::integers(3, 1)), BigInt(0));
    // Full flags in F_2^3: 7 * 3.
    EXPECT_EQ(chain_count({1, 1, 1}, {{1}, {1}, {1}}, Dvr::integers(2, 1)), BigInt(21));
    EXPECT_EQ(chain_count_at({1, 1, 1}, {{1}, {1}, {1}}, BigInt(2)), BigInt(21));
}

TEST(Hall, Polynomials) {
    EXPECT_EQ(hall_polynomial({1, 1}, {1}, {1}).str(), "q + 1");
    EXPECT_EQ(hall_polynomial({2}, {1}, {1}).str(), "1");
    EXPECT_TRUE(hall_polynomial({2}, {1}, {2}).is_zero());
    EXPECT_EQ(hall_polynomial({1, 1, 1}, {1}, {1, 1}).str(), "q^2 + q + 1");
}

TEST(Aut, Examples) {
    EXPECT_EQ(aut_order({1}, Dvr::integers(3, 1)), BigInt(2));
    EXPECT_EQ(aut_order({1, 1}, Dvr::integers(2, 1)), BigInt(6));
    EXPECT_EQ(aut_order({2}, Dvr::integers(2, 2)), BigInt(2));
    // Aut(Z/4 + Z/2) is dihedral of order 8.
    EXPECT_EQ(aut_order({2, 1}, Dvr::integers(2, 2)), BigInt(8));
}

TEST(Aut, MatchesBruteForceHomomorphisms) {
    const std::vector<std::pair<Partition, Dvr>> cases = {
        {{2, 1}, Dvr::integers(2, 2)},    {{2, 1}, Dvr::integers(3, 2)}, {{1, 1}, Dvr::power_series(4, 1)},
        {{2, 1}, Dvr::power_series(2, 2)}, {{3, 1}, Dvr::integers(2, 3)}, {{2, 2}, Dvr::integers(2, 2)},
        {{2, 1, 1}, Dvr::integers(2, 2)}, {{3}, Dvr::integers(3, 3)},
    };
    for (const auto& [lambda, R] : cases) {
        const BigInt n = aut_order(lambda, R);
        EXPECT_EQ(n, BigInt(brute_aut_count(lambda, R))) << lambda.str() << " " << R.str();
        EXPECT_EQ(n, aut_order_formula(lambda, BigInt(R.q())));
    }
}

TEST(Aut, GeneratesAGroup) {
    for (const Partition& lambda : {Partition{2, 1}, Partition{2, 1, 1}, Partition{3, 1}, Partition{2, 2}}) {
        const FiniteModule M(lambda, Dvr::Kind::Integers, 2);
        std::set<AutMatrix> all;
        aut_generate(M, [&](const AutMatrix& h) {
            EXPECT_TRUE(aut::is_automorphism(M, h));
            all.insert(h);
        });
        EXPECT_EQ(BigInt(all.size()), aut_order_formula(lambda, 2));
        for (const auto& a : all)
            for (const auto& b : all) ASSERT_TRUE(all.count(aut::compose(M, a, b)));
    }
}

TEST(Aut, GLIdentityAndPolynomial) {
    for (std::uint64_t q : {2, 3, 4, 5})
        for (int n = 1; n <= 3; ++n) EXPECT_EQ(aut_order(ones(n), sample_ring(q, 1)), gl_order(n, q));
    EXPECT_EQ(aut_polynomial({1}).str(), "q - 1");
    EXPECT_EQ(aut_polynomial({2}).str(), "q^2 - q");
}

TEST(Beta, IdentityAndScalars) {
    const FiniteModule M({2, 1}, Dvr::Kind::Integers, 3);
    const auto b = beta_of(M, AutMatrix::identity(2));
    EXPECT_EQ(b.Y, Mat::identity(2));
    EXPECT_EQ(b.Z, Mat::identity(2));
    AutMatrix c = AutMatrix::identity(2);
    c.at(0, 0) = 5;  // unit 5 mod 9, reduces to 2 mod 3
    c.at(1, 1) = 2;
    const auto bc = beta_of(M, c);
    EXPECT_EQ(bc.Y, mat::scale(Field::get(3), 2, Mat::identity(2)));
    EXPECT_EQ(bc.Z, mat::scale(Field::get(3), 2, Mat::identity(2)));
}

TEST(Beta, ImageEqualsCriterionSet) {
    for (std::uint64_t p : {2, 3}) {
        for (const Partition& lambda : {Partition{2, 1}, Partition{3, 1}, Partition{2, 1, 1}, Partition{1, 1}}) {
            const FiniteModule M(lambda, Dvr::Kind::Integers, p);
            const auto u = block_sizes(lambda);
            std::set<BetaPair> image, criterion;
            aut_generate(M, [&](const AutMatrix& h) { image.insert(beta_of(M, h)); });
            beta_image_iter(u, p, [&](const BetaPair& pr) { criterion.insert(pr); });
            EXPECT_EQ(image, criterion) << lambda.str() << " p=" << p;
            EXPECT_EQ(BigInt(criterion.size()), beta_image_order(u, p));
            for (const auto& pr : image) EXPECT_TRUE(beta_image_contains(u, pr));
        }
    }
}

TEST(Beta, RejectsMismatchedDiagonal) {
    const Field& F = Field::get(3);
    BetaPair pr{Mat::identity(2), mat::scale(F, 2, Mat::identity(2))};
    EXPECT_FALSE(beta_image_contains({2}, pr));
    EXPECT_TRUE(beta_image_contains({2}, BetaPair{Mat::identity(2), Mat::identity(2)}));
    EXPECT_THROW(beta_image_contains({3}, pr), DomainError);
}
