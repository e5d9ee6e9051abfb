#include "porc/census.hpp"
#include "porc/oracle.hpp"

#include <gtest/gtest.h>

using namespace porc;

namespace {

// D8 as permutations of the square's corners; element 0 is the identity.
Table dihedral8() {
    std::vector<std::array<int, 4>> els;
    const std::array<int, 4> r{1, 2, 3, 0}, s{0, 3, 2, 1};
    const auto compose = [](const std::array<int, 4>& a, const std::array<int, 4>& b) {
        std::array<int, 4> c{};
        for (int i = 0; i < 4; ++i) c[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(b[static_cast<std::size_t>(i)])];
        return c;
    };
    els.push_back({0, 1, 2, 3});
    for (std::size_t i = 0; i < els.size(); ++i)
        for (const auto& g : {r, s}) {
            const auto c = compose(els[i], g);
            if (std::find(els.begin(), els.end(), c) == els.end()) els.push_back(c);
        }
    Table t;
    t.N = static_cast<std::uint32_t>(els.size());
    t.op.resize(static_cast<std::size_t>(t.N) * t.N);
    for (std::uint32_t x = 0; x < t.N; ++x)
        for (std::uint32_t y = 0; y < t.N; ++y)
            t.op[static_cast<std::size_t>(x) * t.N + y] = static_cast<std::uint32_t>(std::find(els.begin(), els.end(), compose(els[x], els[y])) - els.begin());
    return t;
}

}  // namespace

TEST(Oracle, SmallCounts) {
    for (std::uint64_t p : {2, 3, 5}) {
        EXPECT_EQ(enumerate_lie_rings(0, p).count, 1);
        EXPECT_EQ(enumerate_lie_rings(1, p).count, 1);
        EXPECT_EQ(enumerate_lie_rings(2, p).count, 2);
    }
    const auto r = enumerate_lie_rings(3, 5);
    EXPECT_EQ(r.count, 5);
    EXPECT_EQ(r.reps.size(), 5u);
    EXPECT_THROW(enumerate_lie_rings(3, 4), DomainError);
}

TEST(Oracle, AgreesWithCensus) {
    Census census;
    for (int n = 1; n <= 3; ++n)
        for (std::uint64_t p : {2, 3, 5, 7}) EXPECT_EQ(enumerate_lie_rings(n, p).count, census.census(n, p).count) << "n=" << n << " p=" << p;
    for (std::uint64_t p : {2, 3}) {
        const auto r = enumerate_lie_rings(4, p);
        EXPECT_EQ(r.count, 11) << "p=" << p;
        EXPECT_EQ(r.count, census.census(4, p).count) << "p=" << p;
    }
}

TEST(Oracle, RepresentativesPairwiseNonIsomorphic) {
    const auto r = enumerate_lie_rings(3, 3);
    std::vector<Table> tables;
    for (const auto& L : r.reps) tables.push_back(table_of(L));
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (std::size_t j = i + 1; j < tables.size(); ++j) EXPECT_FALSE(isomorphic(tables[i], tables[j])) << i << " vs " << j;
}

TEST(Oracle, RefusesOverCap) {
    const auto saved = limits();
    limits().table_count = 10;
    EXPECT_THROW(enumerate_lie_rings(4, 3), Refusal);
    limits() = saved;
}

TEST(Lazard, HeisenbergHasExponentP) {
    const std::uint64_t p = 3;
    LieRing H{p, ones(3), std::vector<LieRing::Vec>(9, LieRing::Vec(3, 0))};
    H.bracket[0 * 3 + 1][2] = 1;
    H.bracket[1 * 3 + 0][2] = p - 1;
    const Table g = lazard_group(H);
    ASSERT_TRUE(is_group(g));
    for (std::uint32_t x = 0; x < g.N; ++x) EXPECT_LE(g.element_order(x), p);
    EXPECT_TRUE(frattini_central_check(g, p));
    // Nonabelian.
    bool commutes = true;
    for (std::uint32_t x = 0; x < g.N && commutes; ++x)
        for (std::uint32_t y = 0; y < g.N; ++y)
            if (g.mul(x, y) != g.mul(y, x)) commutes = false;
    EXPECT_FALSE(commutes);
}

TEST(Lazard, RefusesEvenPrime) {
    LieRing L{2, ones(1), {LieRing::Vec(1, 0)}};
    EXPECT_THROW(lazard_group(L), Refusal);
}

TEST(Lazard, OrderP3GivesFiveGroups) {
    for (std::uint64_t p : {3, 5, 7}) {
        const auto r = enumerate_lie_rings(3, p);
        std::vector<Table> groups;
        for (const auto& L : r.reps) {
            groups.push_back(lazard_group(L));
            ASSERT_TRUE(is_group(groups.back()));
            EXPECT_TRUE(frattini_central_check(groups.back(), p));
        }
        ASSERT_EQ(groups.size(), 5u);
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = i + 1; j < groups.size(); ++j) EXPECT_FALSE(isomorphic(groups[i], groups[j])) << "p=" << p;
    }
}

TEST(FrattiniCheck, DihedralPassesSymmetricFails) {
    const Table d8 = dihedral8();
    ASSERT_EQ(d8.N, 8u);
    ASSERT_TRUE(is_group(d8));
    EXPECT_TRUE(frattini_central_check(d8, 2));
    // S3 on 3 points fails: commutators are not central.
    Table s3;
    std::vector<std::array<int, 3>> els;
    std::array<int, 3> a{0, 1, 2};
    do els.push_back(a);
    while (std::next_permutation(a.begin(), a.end()));
    s3.N = 6;
    s3.op.resize(36);
    for (std::uint32_t x = 0; x < 6; ++x)
        for (std::uint32_t y = 0; y < 6; ++y) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] = els[x][static_cast<std::size_t>(els[y][static_cast<std::size_t>(i)])];
            s3.op[x * 6 + y] = static_cast<std::uint32_t>(std::find(els.begin(), els.end(), c) - els.begin());
        }
    EXPECT_FALSE(frattini_central_check(s3, 2));
}
