#pragma once

// Types of conjugacy classes in GL_n1(q) x ... x GL_nr(q): actual classes, their types,
// class counts and sizes, projections, and intersection counts with the uniform families used
// by the census (flag stabilisers and the image of beta).

#include "porc/dvrmod.hpp"

#include <set>

namespace porc {

/// One index of a type: a polynomial degree and one partition per component.
struct TypeColumn {
    int degree = 1;
    std::vector<Partition> parts;

    bool operator==(const TypeColumn&) const = default;
    auto operator<=>(const TypeColumn&) const = default;
};

/// Canonical form of a type: its columns in sorted order.
struct TypeKey {
    int r = 0;  // number of components
    std::vector<TypeColumn> cols;

    TypeKey() = default;
    TypeKey(int components, std::vector<TypeColumn> c) : r(components), cols(std::move(c)) {
        for (const auto& col : cols) {
            if (static_cast<int>(col.parts.size()) != r) throw DomainError("type column has the wrong number of components");
            if (col.degree < 1) throw DomainError("type column degree must be positive");
            bool any = false;
            for (const auto& p : col.parts) any |= !p.empty();
            if (!any) throw DomainError("type column with all partitions empty");
        }
        std::sort(cols.begin(), cols.end());
    }

    std::vector<int> dims() const {
        std::vector<int> n(static_cast<std::size_t>(r), 0);
        for (const auto& c : cols)
            for (int i = 0; i < r; ++i) n[static_cast<std::size_t>(i)] += c.degree * c.parts[static_cast<std::size_t>(i)].weight();
        return n;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t j = 0; j < cols.size(); ++j) {
            s += (j ? " " : "") + std::string("d") + std::to_string(cols[j].degree) + ":";
            for (std::size_t i = 0; i < cols[j].parts.size(); ++i) s += (i ? "|" : "") + cols[j].parts[i].str();
        }
        return s + "]";
    }

    bool operator==(const TypeKey&) const = default;
    auto operator<=>(const TypeKey&) const = default;
};

struct TypeKeyHash {
    std::size_t operator()(const TypeKey& t) const {
        std::size_t h = static_cast<std::size_t>(t.r);
        for (const auto& c : t.cols) {
            hash_combine(h, static_cast<std::size_t>(c.degree));
            for (const auto& p : c.parts) hash_combine(h, PartitionHash()(p));
        }
        return h;
    }
};

/// prod over groups of identical columns of (multiplicity)!.
inline BigInt pretype_aut_order(const TypeKey& t) {
    BigInt r = 1;
    for (std::size_t i = 0; i < t.cols.size();) {
        std::size_t j = i;
        while (j < t.cols.size() && t.cols[j] == t.cols[i]) ++j;
        r *= factorial(static_cast<unsigned>(j - i));
        i = j;
    }
    return r;
}

/// Injective assignments of irreducible polynomials other than X to the columns, respecting
/// degrees: a product of falling factorials.
inline BigInt realisation_count(const TypeKey& t, std::uint64_t q) {
    std::map<int, int> by_degree;
    for (const auto& c : t.cols) ++by_degree[c.degree];
    BigInt r = 1;
    for (auto [d, k] : by_degree) {
        const std::int64_t avail = static_cast<std::int64_t>(unit_irreducible_count(q, d));
        for (int i = 0; i < k; ++i) r *= std::max<std::int64_t>(0, avail - i);
    }
    return r;
}

inline BigInt class_count(const TypeKey& t, std::uint64_t q) {
    return exact_div(realisation_count(t, q), pretype_aut_order(t), "class_count");
}

/// Projection onto the listed components (in the listed order); columns that become empty
/// are dropped.
inline TypeKey project(const TypeKey& t, const std::vector<int>& comps) {
    std::vector<TypeColumn> cols;
    for (const auto& c : t.cols) {
        TypeColumn n{c.degree, {}};
        bool any = false;
        for (int i : comps) {
            if (i < 0 || i >= t.r) throw DomainError("projection onto a missing component");
            n.parts.push_back(c.parts[static_cast<std::size_t>(i)]);
            any |= !n.parts.back().empty();
        }
        if (any) cols.push_back(std::move(n));
    }
    return TypeKey(static_cast<int>(comps.size()), std::move(cols));
}

/// Size of any class of type t: the product over components of
/// |GL_n(q)| / prod_j a_{lambda^j}(q^{d_j}).
inline BigInt class_size(const TypeKey& t, std::uint64_t q) {
    BigInt r = 1;
    const auto n = t.dims();
    for (int i = 0; i < t.r; ++i) {
        BigInt denom = 1;
        for (const auto& c : t.cols)
            denom *= aut_order_formula(c.parts[static_cast<std::size_t>(i)], big_pow(BigInt(q), static_cast<unsigned>(c.degree)));
        r *= exact_div(aut_order_formula(ones(n[static_cast<std::size_t>(i)]), BigInt(q)), denom, "class_size");
    }
    return r;
}

/// For a type over (n, d_1, ..., d_l): the number of g-stable flags of shape d inducing the
/// given quotient data, for any g in the component-0 class.
inline BigInt flag_fix_count(const TypeKey& t, std::uint64_t q) {
    BigInt r = 1;
    for (const auto& c : t.cols) {
        const std::vector<Partition> mus(c.parts.begin() + 1, c.parts.end());
        r *= chain_count_at(c.parts[0], mus, big_pow(BigInt(q), static_cast<unsigned>(c.degree)));
        if (r == 0) break;
    }
    return r;
}

/// |C ∩ J_d(q)| for a class C of type t over (n, d_1, ..., d_l), where J_d is the image of the
/// stabiliser of the standard flag of shape d acting on V and on the successive quotients.
inline BigInt parabolic_intersection(const TypeKey& t, const std::vector<int>& d, std::uint64_t q) {
    if (t.r != static_cast<int>(d.size()) + 1) throw DomainError("parabolic_intersection: component count mismatch");
    const auto n = t.dims();
    int total = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (n[i + 1] != d[i]) return 0;
        total += d[i];
    }
    if (n[0] != total) return 0;
    const BigInt beta = flag_fix_count(t, q);
    if (beta == 0) return 0;
    return exact_div(class_size(project(t, {0}), q) * beta, flag_count(d, q), "parabolic_intersection");
}

/// All types t' over `total` components whose projection onto `kept` (in that order) is t,
/// with the same columns, where component i not in kept has dimension new_dims[i].
inline std::vector<TypeKey> extension_types(const TypeKey& t, const std::vector<int>& kept, int total, const std::vector<int>& new_dims) {
    if (static_cast<int>(kept.size()) != t.r) throw DomainError("extension_types: kept components mismatch");
    std::vector<int> others;
    for (int i = 0; i < total; ++i)
        if (std::find(kept.begin(), kept.end(), i) == kept.end()) others.push_back(i);
    std::set<TypeKey> out;
    const std::size_t ncols = t.cols.size();
    std::vector<TypeColumn> cols(ncols);
    for (std::size_t j = 0; j < ncols; ++j) {
        cols[j].degree = t.cols[j].degree;
        cols[j].parts.assign(static_cast<std::size_t>(total), Partition());
        for (std::size_t k = 0; k < kept.size(); ++k) cols[j].parts[static_cast<std::size_t>(kept[k])] = t.cols[j].parts[k];
    }
    std::vector<int> left(new_dims);
    // Fill component others[oi] column by column.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t oi, std::size_t j) {
        if (oi == others.size()) {
            out.insert(TypeKey(total, cols));
            return;
        }
        const auto comp = static_cast<std::size_t>(others[oi]);
        if (j == ncols) {
            if (left[comp] == 0) rec(oi + 1, 0);
            return;
        }
        const int d = cols[j].degree;
        for (int w = 0; w * d <= left[comp]; ++w) {
            for (const auto& p : partitions_of(w)) {
                cols[j].parts[comp] = p;
                left[comp] -= w * d;
                rec(oi, j + 1);
                left[comp] += w * d;
            }
        }
        cols[j].parts[comp] = Partition();
    };
    for (int i : others)
        if (i >= static_cast<int>(new_dims.size())) throw DomainError("extension_types: missing dimension");
    rec(0, 0);
    return {out.begin(), out.end()};
}

/// |pi(H) ∩ C| = sum over extensions t' of (|Aut t| / |Aut t'|) |C' ∩ H| for a uniform family H
/// whose projection pi onto `kept` is injective and adds no new polynomials.
template <class Fn>
BigInt subproj_intersection(const TypeKey& t, const std::vector<int>& kept, int total, const std::vector<int>& new_dims, Fn&& inter) {
    const BigInt aut = pretype_aut_order(t);
    BigInt sum = 0;
    for (const auto& ext : extension_types(t, kept, total, new_dims)) {
        const BigInt v = inter(ext);
        if (v != 0) sum += exact_div(aut, pretype_aut_order(ext), "subproj") * v;
    }
    return sum;
}

/// |C ∩ im(alpha)| where alpha maps the stabiliser of the flag of shape d (all parts positive)
/// to GL(V) x GL(V/U_{l-1}); t is a type over (m, d_l). With d_l <= 1 callers may instead pass
/// a one-component type, meaning the projection to GL(V) alone.
inline BigInt flag_image_intersection(const TypeKey& t, const std::vector<int>& d, std::uint64_t q) {
    const int l = static_cast<int>(d.size());
    std::vector<int> dims{0};
    for (int x : d) {
        dims.push_back(x);
        dims[0] += x;
    }
    const std::vector<int> kept = t.r == 1 ? std::vector<int>{0} : std::vector<int>{0, l};
    if (t.r == 2 && l == 1) return parabolic_intersection(t, d, q);
    return subproj_intersection(t, kept, l + 1, dims, [&](const TypeKey& ext) { return parabolic_intersection(ext, d, q); });
}

/// |C ∩ im(beta)| for a class C of type t over (s, s), where im(beta) ⊆ GL_s(q) x GL_s(q) is
/// determined by the block sizes u (Y block-lower, Z block-upper, equal diagonal blocks).
inline BigInt aut_image_intersection(const std::vector<int>& u, const TypeKey& t, std::uint64_t q) {
    if (t.r != 2) throw DomainError("aut_image_intersection: type must have two components");
    int s = 0;
    for (int x : u) s += x;
    const auto n = t.dims();
    if (n[0] != s || n[1] != s) return 0;
    const int r = static_cast<int>(u.size());
    std::vector<int> dims{s, s};
    dims.insert(dims.end(), u.begin(), u.end());
    std::vector<int> rev_u(u.rbegin(), u.rend());
    std::vector<int> pi1{0}, pi2{1}, pi0;
    for (int i = r - 1; i >= 0; --i) pi1.push_back(2 + i);
    for (int i = 0; i < r; ++i) {
        pi2.push_back(2 + i);
        pi0.push_back(2 + i);
    }
    return subproj_intersection(t, {0, 1}, r + 2, dims, [&](const TypeKey& ext) -> BigInt {
        const BigInt a1 = parabolic_intersection(project(ext, pi1), rev_u, q);
        if (a1 == 0) return 0;
        const BigInt a2 = parabolic_intersection(project(ext, pi2), u, q);
        if (a2 == 0) return 0;
        return exact_div(a1 * a2, class_size(project(ext, pi0), q), "aut_image_intersection");
    });
}

// ---------------------------------------------------------------------------------------------
// Actual classes

/// Conjugacy class in GL_n(q): (irreducible polynomial, Jordan partition) pairs, sorted.
using ClassData = std::vector<std::pair<UniPoly, Partition>>;

/// Class of a tuple in GL_n1(q) x ... x GL_nr(q), one ClassData per component.
struct TupleClass {
    std::vector<ClassData> comps;
    bool operator==(const TupleClass&) const = default;
    auto operator<=>(const TupleClass&) const = default;
};

inline TypeKey type_of_class(const TupleClass& c) {
    std::map<UniPoly, TypeColumn> cols;
    const int r = static_cast<int>(c.comps.size());
    for (int i = 0; i < r; ++i)
        for (const auto& [f, p] : c.comps[static_cast<std::size_t>(i)]) {
            auto& col = cols[f];
            col.degree = f.degree();
            col.parts.resize(static_cast<std::size_t>(r));
            col.parts[static_cast<std::size_t>(i)] = p;
        }
    std::vector<TypeColumn> v;
    for (auto& kv : cols) v.push_back(std::move(kv.second));
    return TypeKey(r, std::move(v));
}

/// Rational canonical representative: companion matrices of f^k for every part k.
inline Mat class_representative(const Field& F, const ClassData& c) {
    std::vector<Mat> blocks;
    for (const auto& [f, p] : c)
        for (int k : p.parts) blocks.push_back(mat::companion(F, poly::pow(F, f, static_cast<unsigned>(k))));
    return mat::direct_sum(blocks);
}

/// Class of a single invertible matrix, by factoring its characteristic polynomial and
/// reading partitions off kernel dimensions of powers f(g)^k.
inline ClassData class_of_matrix(const Field& F, const Mat& g) {
    if (!mat::invertible(F, g)) throw DomainError("type of a singular matrix");
    const int n = g.rows;
    UniPoly chi = mat::char_poly(F, g);
    ClassData out;
    for (int d = 1; d <= chi.degree(); ++d) {
        for (const auto& f : irreducibles(F.q(), d)) {
            if (chi.degree() < d) break;
            int mult = 0;
            for (;;) {
                auto [quo, rem] = poly::divmod(F, chi, f);
                if (!rem.is_zero()) break;
                chi = quo;
                ++mult;
            }
            if (mult == 0) continue;
            const Mat fg = mat::eval_poly(F, f, g);
            std::vector<int> kd{0};
            Mat power = Mat::identity(n);
            for (int k = 1; k <= mult; ++k) {
                power = mat::mul(F, power, fg);
                kd.push_back(mat::kernel_dim(F, power));
            }
            std::vector<int> parts;
            for (int k = 1; k <= mult; ++k) {
                const int c = (kd[static_cast<std::size_t>(k)] - kd[static_cast<std::size_t>(k - 1)]) / d;
                for (int i = static_cast<int>(parts.size()); i < c; ++i) parts.push_back(0);
                for (int i = 0; i < c; ++i) ++parts[static_cast<std::size_t>(i)];
            }
            out.emplace_back(f, Partition(parts));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline TupleClass class_of_tuple(const Field& F, const std::vector<Mat>& g) {
    TupleClass c;
    for (const auto& m : g) c.comps.push_back(class_of_matrix(F, m));
    return c;
}

inline TypeKey type_of_tuple(const Field& F, const std::vector<Mat>& g) { return type_of_class(class_of_tuple(F, g)); }

/// Irreducibles other than X of degree <= n, by degree then code.
inline std::vector<UniPoly> unit_irreducibles_upto(std::uint64_t q, int n) {
    std::vector<UniPoly> out;
    for (int d = 1; d <= n; ++d)
        for (const auto& f : irreducibles(q, d))
            if (!(d == 1 && f.c[0] == 0)) out.push_back(f);
    return out;
}

/// Visits every conjugacy class of GL_n(q) once, in the sorted form class_of_matrix returns.
inline void for_each_gl_class(int n, std::uint64_t q, const std::function<void(const ClassData&)>& visit) {
    const auto polys = unit_irreducibles_upto(q, n);
    ClassData cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
        if (left == 0) {
            ClassData sorted = cur;
            std::sort(sorted.begin(), sorted.end());
            visit(sorted);
            return;
        }
        for (std::size_t i = start; i < polys.size(); ++i) {
            const int d = polys[i].degree();
            if (d > left) break;
            for (int w = 1; w * d <= left; ++w)
                for (const auto& p : partitions_of(w)) {
                    cur.emplace_back(polys[i], p);
                    rec(i + 1, left - w * d);
                    cur.pop_back();
                }
        }
    };
    rec(0, n);
}

/// All types of GL_n(q) classes that occur for some q (the polynomials are forgotten).
inline std::vector<TypeKey> gl_types(int n) {
    std::set<TypeKey> out;
    // Distribute n over columns (degree, partition) as a multiset.
    std::vector<TypeColumn> cols;
    std::function<void(int, TypeColumn)> rec = [&](int left, TypeColumn min_col) {
        if (left == 0) {
            out.insert(TypeKey(1, cols));
            return;
        }
        for (int d = 1; d <= left; ++d)
            for (int w = 1; w * d <= left; ++w)
                for (const auto& p : partitions_of(w)) {
                    TypeColumn c{d, {p}};
                    if (!cols.empty() && c < min_col) continue;
                    cols.push_back(c);
                    rec(left - w * d, c);
                    cols.pop_back();
                }
    };
    rec(n, TypeColumn{});
    return {out.begin(), out.end()};
}

}  // namespace porc
