#include "porc/typelib.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace porc;

namespace {

// Diagonal blocks of a block upper triangular matrix with the given block sizes.
std::vector<Mat> diagonal_blocks(const Mat& g, const std::vector<int>& d) {
    std::vector<Mat> out;
    int off = 0;
    for (int x : d) {
        out.push_back(mat::submatrix(g, off, off, x, x));
        off += x;
    }
    return out;
}

// Number of group elements of each type, counted element by element.
template <class Iter>
std::map<TypeKey, BigInt> brute_type_counts(const Field& F, Iter&& iter) {
    std::map<TypeKey, BigInt> out;
    iter([&](const std::vector<Mat>& tuple) { out[type_of_tuple(F, tuple)] += 1; });
    return out;
}

}  // namespace

TEST(TypeLib, ClassEnumerationPartitionsGL) {
    for (std::uint64_t q : {2, 3, 4})
        for (int n = 1; n <= 3; ++n) {
            BigInt total = 0;
            std::size_t classes = 0;
            for_each_gl_class(n, q, [&](const ClassData& c) {
                total += class_size(type_of_class(TupleClass{{c}}), q);
                ++classes;
            });
            EXPECT_EQ(total, gl_order(n, q)) << "n=" << n << " q=" << q;
            BigInt by_type = 0;
            for (const auto& t : gl_types(n)) by_type += class_count(t, q);
            EXPECT_EQ(by_type, BigInt(classes));
        }
}

TEST(TypeLib, ClassesOfGL2OverF2) {
    std::size_t classes = 0;
    for_each_gl_class(2, 2, [&](const ClassData&) { ++classes; });
    EXPECT_EQ(classes, 3u);
}

TEST(TypeLib, RepresentativesHaveTheirClass) {
    for (std::uint64_t q : {2, 3, 4})
        for (int n = 1; n <= 3; ++n) {
            const Field& F = Field::get(q);
            for_each_gl_class(n, q, [&](const ClassData& c) { EXPECT_EQ(class_of_matrix(F, class_representative(F, c)), c); });
        }
}

TEST(TypeLib, BruteForceClassSizes) {
    for (std::uint64_t q : {2, 3})
        for (int n = 1; n <= 3; ++n) {
            const Field& F = Field::get(q);
            std::map<ClassData, BigInt> sizes;
            gl_iter(n, q, [&](const Mat& g) { sizes[class_of_matrix(F, g)] += 1; });
            std::size_t classes = 0;
            for_each_gl_class(n, q, [&](const ClassData& c) {
                ++classes;
                EXPECT_EQ(sizes[c], class_size(type_of_class(TupleClass{{c}}), q));
            });
            EXPECT_EQ(sizes.size(), classes);
        }
}

TEST(TypeLib, RealisationCountExcludesX) {
    const TypeKey t(1, {TypeColumn{1, {Partition{1}}}});
    EXPECT_EQ(realisation_count(t, 2), BigInt(1));
    EXPECT_EQ(realisation_count(t, 3), BigInt(2));
    const TypeKey two(1, {TypeColumn{1, {Partition{1}}}, TypeColumn{1, {Partition{1}}}});
    EXPECT_EQ(pretype_aut_order(two), BigInt(2));
    EXPECT_EQ(class_count(two, 4), BigInt(3));
    EXPECT_EQ(class_count(two, 2), BigInt(0));
}

TEST(TypeLib, FlagFixCountIdentity) {
    const TypeKey t(3, {TypeColumn{1, {Partition{1, 1}, Partition{1}, Partition{1}}}});
    EXPECT_EQ(flag_fix_count(t, 2), BigInt(3));
}

TEST(TypeLib, ProjectionDropsEmptyColumns) {
    const TypeKey t(2, {TypeColumn{1, {Partition{1}, Partition()}}, TypeColumn{2, {Partition(), Partition{1}}}});
    EXPECT_EQ(project(t, {1}), TypeKey(1, {TypeColumn{2, {Partition{1}}}}));
    EXPECT_THROW(project(t, {2}), DomainError);
}

TEST(TypeLib, ParabolicIntersectionMatchesBruteForce) {
    const std::vector<std::vector<int>> shapes{{1, 1}, {1, 2}, {2, 1}, {1, 1, 1}, {2}, {3}};
    for (std::uint64_t q : {2, 3}) {
        const Field& F = Field::get(q);
        for (const auto& d : shapes) {
            const auto brute = brute_type_counts(F, [&](auto&& emit) {
                parabolic_iter(d, q, [&](const Mat& g) {
                    std::vector<Mat> tuple{g};
                    for (auto& b : diagonal_blocks(g, d)) tuple.push_back(b);
                    emit(tuple);
                });
            });
            for (const auto& [t, count] : brute)
                EXPECT_EQ(count, class_count(t, q) * parabolic_intersection(t, d, q)) << t.str() << " q=" << q;
        }
    }
}

TEST(TypeLib, FlagImageMatchesBruteForce) {
    const std::vector<std::vector<int>> shapes{{1, 1}, {1, 2}, {2, 1}, {1, 1, 1}, {3}};
    for (std::uint64_t q : {2, 3}) {
        const Field& F = Field::get(q);
        for (const auto& d : shapes) {
            const int w = d.back();
            const int m = [&] { int s = 0; for (int x : d) s += x; return s; }();
            const auto brute = brute_type_counts(F, [&](auto&& emit) {
                parabolic_iter(d, q, [&](const Mat& g) {
                    if (w <= 1) emit(std::vector<Mat>{g});
                    else emit(std::vector<Mat>{g, mat::submatrix(g, m - w, m - w, w, w)});
                });
            });
            // alpha is injective on P, so element counts equal image counts.
            BigInt total = 0;
            for (const auto& [t, count] : brute) {
                EXPECT_EQ(count, class_count(t, q) * flag_image_intersection(t, d, q)) << t.str() << " q=" << q;
                total += count;
            }
            EXPECT_EQ(total, parabolic_order(d, q));
        }
    }
}

TEST(TypeLib, AutImageMatchesBruteForce) {
    const std::vector<std::vector<int>> blocks{{1}, {2}, {1, 1}, {1, 2}, {2, 1}, {1, 1, 1}};
    for (std::uint64_t q : {2, 3}) {
        const Field& F = Field::get(q);
        for (const auto& u : blocks) {
            if (beta_image_order(u, q) > 2'000'000) continue;
            const auto brute = brute_type_counts(F, [&](auto&& emit) {
                beta_image_iter(u, q, [&](const BetaPair& b) { emit(std::vector<Mat>{b.Y, b.Z}); });
            });
            BigInt total = 0;
            for (const auto& [t, count] : brute) {
                EXPECT_EQ(count, class_count(t, q) * aut_image_intersection(u, t, q)) << t.str() << " q=" << q;
                total += count;
            }
            EXPECT_EQ(total, beta_image_order(u, q));
        }
    }
}
