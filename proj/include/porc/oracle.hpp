#pragma once

// Brute-force ground truth: Lie rings of order p^n with pL + [L, L] ⊆ Z(L), enumerated as
// bracket tables on each abelian group M_mu and counted up to Aut(M_mu); the Lazard group of
// such a ring for odd p; and a direct check of [x, y^p] = [[x, y], z] = 1 on group tables.

#include "porc/dvrmod.hpp"
#include "porc/lie.hpp"

#include <numeric>
#include <random>

namespace porc {

struct OracleResult {
    int n = 0;
    std::uint64_t p = 0;
    BigInt count = 0;
    std::vector<std::pair<Partition, std::uint64_t>> by_type;  // additive type -> number of classes
    std::vector<LieRing> reps;
};

namespace oracle_detail {

struct UnionFind {
    std::vector<std::uint64_t> parent;
    explicit UnionFind(std::uint64_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::uint64_t find(std::uint64_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::uint64_t a, std::uint64_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

inline void check_jacobi(const LieRing& L) {
    const int g = L.gens();
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            for (int k = 0; k < g; ++k) {
                LieRing::Vec e(static_cast<std::size_t>(g), 0), f(e), h(e);
                e[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(j)] = h[static_cast<std::size_t>(k)] = 1;
                const auto s = L.add(L.add(L.lie(L.lie(e, f), h), L.lie(L.lie(f, h), e)), L.lie(L.lie(h, e), f));
                for (auto v : s)
                    if (v) throw InternalInconsistency("enumerated bracket table violates the Jacobi identity");
            }
}

/// Elementary additive group F_p^g: choose a basis whose last z vectors span the centre. The
/// bracket is an alternating map ∧²F_p^k -> F_p^z (k = g - z) with zero radical, and two such
/// rings are isomorphic iff the maps lie in one GL_k x GL_z orbit.
inline void enumerate_elementary(int g, std::uint64_t p, OracleResult& out, std::uint64_t& classes) {
    const Field& F = Field::get(p);
    classes = 0;
    for (int z = g; z >= 0; --z) {
        const int k = g - z;
        const int pairs = k * (k - 1) / 2;
        if (z == g) {  // abelian
            LieRing L{p, ones(g), std::vector<LieRing::Vec>(static_cast<std::size_t>(g * g), LieRing::Vec(static_cast<std::size_t>(g), 0))};
            out.reps.push_back(L);
            ++classes;
            continue;
        }
        if (z == 0 || pairs == 0) continue;
        const std::uint64_t total = pow_u64(p, static_cast<unsigned>(z * pairs));
        const BigInt group = gl_order(k, p) * gl_order(z, p);
        if (group * total > BigInt(limits().table_count) * 100)
            throw Refusal("elementary oracle enumeration too large", group * BigInt(total));
        // beta as a z x pairs matrix; code -> matrix.
        const auto decode = [&](std::uint64_t code) {
            Mat b(z, pairs);
            for (auto& v : b.a) {
                v = static_cast<Field::Elem>(code % p);
                code /= p;
            }
            return b;
        };
        const auto encode = [&](const Mat& b) {
            std::uint64_t c = 0;
            for (std::size_t i = b.a.size(); i-- > 0;) c = c * p + b.a[i];
            return c;
        };
        std::vector<std::pair<int, int>> idx;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) idx.emplace_back(i, j);
        // Radical-free maps only: no nonzero x with beta(x, .) = 0.
        const auto radical_free = [&](const Mat& b) {
            // Matrix of x -> (beta(x, e_j))_j as a (z*k) x k matrix.
            Mat M(z * k, k);
            for (std::size_t c = 0; c < idx.size(); ++c) {
                const auto [i, j] = idx[c];
                for (int a = 0; a < z; ++a) {
                    M.at(a * k + j, i) = F.add(M.at(a * k + j, i), b.at(a, static_cast<int>(c)));
                    M.at(a * k + i, j) = F.sub(M.at(a * k + i, j), b.at(a, static_cast<int>(c)));
                }
            }
            return mat::kernel_dim(F, M) == 0;
        };
        std::vector<bool> valid(total);
        for (std::uint64_t c = 0; c < total; ++c) valid[c] = radical_free(decode(c));
        UnionFind uf(total);
        const auto gk = gl_list(k, p), gz = gl_list(z, p);
        // (A, D) . beta = D beta ∧²(A)^T-action: beta'(x, y) = D beta(A^{-1} x, A^{-1} y).
        for (const auto& A : gk) {
            const Mat Ai = mat::inverse(F, A);
            Mat W(pairs, pairs);  // wedge of A^{-1}
            for (std::size_t c = 0; c < idx.size(); ++c)
                for (std::size_t r = 0; r < idx.size(); ++r) {
                    const auto [i, j] = idx[c];
                    const auto [a, b] = idx[r];
                    W.at(static_cast<int>(r), static_cast<int>(c)) = F.sub(F.mul(Ai.at(a, i), Ai.at(b, j)), F.mul(Ai.at(b, i), Ai.at(a, j)));
                }
            for (const auto& D : gz)
                for (std::uint64_t c = 0; c < total; ++c)
                    if (valid[c]) uf.unite(c, encode(mat::mul(F, mat::mul(F, D, decode(c)), W)));
        }
        for (std::uint64_t c = 0; c < total; ++c) {
            if (!valid[c] || uf.find(c) != c) continue;
            ++classes;
            const Mat b = decode(c);
            LieRing L{p, ones(g), std::vector<LieRing::Vec>(static_cast<std::size_t>(g * g), LieRing::Vec(static_cast<std::size_t>(g), 0))};
            for (std::size_t col = 0; col < idx.size(); ++col) {
                const auto [i, j] = idx[col];
                for (int a = 0; a < z; ++a) {
                    const auto v = b.at(a, static_cast<int>(col));
                    L.bracket[static_cast<std::size_t>(i * g + j)][static_cast<std::size_t>(k + a)] = v;
                    L.bracket[static_cast<std::size_t>(j * g + i)][static_cast<std::size_t>(k + a)] = F.neg(v);
                }
            }
            out.reps.push_back(L);
        }
    }
}

/// General additive group M_mu: every table with values in A[p] that satisfies the class-2
/// condition, orbits of Aut(M_mu) found by union-find along a verified generating set.
inline void enumerate_general(const Partition& mu, std::uint64_t p, OracleResult& out, std::uint64_t& classes) {
    const int g = mu.length();
    const int pairs = g * (g - 1) / 2;
    const std::uint64_t total = pow_u64(p, static_cast<unsigned>(g * pairs));
    if (BigInt(total) > BigInt(limits().table_count)) throw Refusal("bracket-table enumeration for " + mu.str() + " exceeds the table cap", BigInt(total));
    const FiniteModule A(mu, Dvr::Kind::Integers, p);
    std::vector<std::pair<int, int>> idx;
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) idx.emplace_back(i, j);
    const auto decode = [&](std::uint64_t code) {
        LieRing L{p, mu, std::vector<LieRing::Vec>(static_cast<std::size_t>(g * g), LieRing::Vec(static_cast<std::size_t>(g), 0))};
        for (const auto& [i, j] : idx)
            for (int a = 0; a < g; ++a) {
                const std::uint64_t alpha = code % p;
                code /= p;
                const std::uint64_t v = alpha * pow_u64(p, static_cast<unsigned>(mu.parts[static_cast<std::size_t>(a)] - 1));
                L.bracket[static_cast<std::size_t>(i * g + j)][static_cast<std::size_t>(a)] = v;
                L.bracket[static_cast<std::size_t>(j * g + i)][static_cast<std::size_t>(a)] = (L.modulus(a) - v) % L.modulus(a);
            }
        return L;
    };
    const auto encode = [&](const LieRing& L) {
        std::uint64_t c = 0, scale = 1;
        for (const auto& [i, j] : idx)
            for (int a = 0; a < g; ++a) {
                const std::uint64_t v = L.br(i, j)[static_cast<std::size_t>(a)];
                const std::uint64_t unit = pow_u64(p, static_cast<unsigned>(mu.parts[static_cast<std::size_t>(a)] - 1));
                if (v % unit) throw InternalInconsistency("bracket value outside A[p]");
                c += (v / unit) * scale;
                scale *= p;
            }
        return c;
    };
    std::vector<bool> valid(total);
    for (std::uint64_t c = 0; c < total; ++c) valid[c] = is_central_frattini_lie(decode(c));

    // Generators of Aut(M_mu): random elements until they generate a group of the full order.
    std::vector<AutMatrix> all;
    aut_generate(A, [&](const AutMatrix& h) { all.push_back(h); });
    std::mt19937_64 rng(12345);
    std::vector<AutMatrix> gens;
    std::set<AutMatrix> closure{AutMatrix::identity(g)};
    while (closure.size() < all.size()) {
        gens.push_back(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
        std::vector<AutMatrix> stack(closure.begin(), closure.end());
        while (!stack.empty()) {
            const AutMatrix x = stack.back();
            stack.pop_back();
            for (const auto& h : gens) {
                AutMatrix y = aut::compose(A, x, h);
                if (closure.insert(y).second) stack.push_back(std::move(y));
            }
        }
    }
    UnionFind uf(total);
    for (const auto& h : gens) {
        // h^{-1} as the last power before the identity.
        AutMatrix hi = AutMatrix::identity(g), next = h;
        while (!(next == AutMatrix::identity(g))) {
            hi = next;
            next = aut::compose(A, next, h);
        }
        std::vector<LieRing::Vec> u;  // columns of h^{-1}
        for (int i = 0; i < g; ++i) {
            LieRing::Vec v(static_cast<std::size_t>(g));
            for (int a = 0; a < g; ++a) v[static_cast<std::size_t>(a)] = hi.at(a, i);
            u.push_back(v);
        }
        for (std::uint64_t c = 0; c < total; ++c) {
            if (!valid[c]) continue;
            const LieRing L = decode(c);
            LieRing M = L;
            for (int i = 0; i < g; ++i)
                for (int j = 0; j < g; ++j)
                    M.bracket[static_cast<std::size_t>(i * g + j)] = aut::apply(A, h, L.lie(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(j)]));
            uf.unite(c, encode(M));
        }
    }
    classes = 0;
    for (std::uint64_t c = 0; c < total; ++c)
        if (valid[c] && uf.find(c) == c) {
            ++classes;
            out.reps.push_back(decode(c));
        }
}

}  // namespace oracle_detail

/// All Lie rings of order p^n with pL + [L, L] ⊆ Z(L), up to isomorphism, with one
/// representative per class.
inline OracleResult enumerate_lie_rings(int n, std::uint64_t p) {
    if (!is_prime(p)) throw DomainError("oracle needs a prime p");
    if (n < 0) throw DomainError("oracle needs n >= 0");
    OracleResult out{n, p, 0, {}, {}};
    for (const auto& mu : partitions_of(n)) {
        std::uint64_t classes = 0;
        if (mu.largest() <= 1)
            oracle_detail::enumerate_elementary(mu.length(), p, out, classes);
        else
            oracle_detail::enumerate_general(mu, p, out, classes);
        out.by_type.emplace_back(mu, classes);
        out.count += classes;
    }
    for (const auto& L : out.reps) {
        if (!is_central_frattini_lie(L)) throw InternalInconsistency("oracle representative violates pL + [L, L] ⊆ Z(L)");
        oracle_detail::check_jacobi(L);
    }
    return out;
}

/// Group on the elements of L with x * y = x + y + [x, y] / 2 (p odd), identity 0.
inline Table lazard_group(const LieRing& L) {
    if (L.p == 2) throw Refusal("the Lazard correspondence needs an odd prime", BigInt(0));
    const Table t = table_of(L);
    const std::uint64_t K = L.K();
    // 1/2 mod p^k as (p^k + 1) / 2.
    const std::uint64_t half = (K + 1) / 2;
    Table g;
    g.N = t.N;
    g.op.resize(t.op.size());
    for (std::uint32_t x = 0; x < t.N; ++x)
        for (std::uint32_t y = 0; y < t.N; ++y) {
            const auto hb = L.index(L.scale(half, L.element(t.br(x, y))));
            g.op[static_cast<std::size_t>(x) * t.N + y] = t.mul(t.mul(x, y), static_cast<std::uint32_t>(hb));
        }
    return g;
}

inline bool is_group(const Table& g) {
    for (std::uint32_t x = 0; x < g.N; ++x) {
        if (g.mul(0, x) != x || g.mul(x, 0) != x) return false;
        for (std::uint32_t y = 0; y < g.N; ++y)
            for (std::uint32_t z = 0; z < g.N; ++z)
                if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z))) return false;
    }
    for (std::uint32_t x = 0; x < g.N; ++x) g.inverse(x);
    return true;
}

/// [x, y^p] = 1 and [[x, y], z] = 1 for all x, y, z, with [x, y] = x^{-1} y^{-1} x y.
inline bool frattini_central_check(const Table& g, std::uint64_t p) {
    std::vector<std::uint32_t> inv(g.N), powp(g.N);
    for (std::uint32_t x = 0; x < g.N; ++x) {
        inv[x] = g.inverse(x);
        std::uint32_t y = 0;
        for (std::uint64_t k = 0; k < p; ++k) y = g.mul(y, x);
        powp[x] = y;
    }
    const auto comm = [&](std::uint32_t x, std::uint32_t y) { return g.mul(g.mul(inv[x], inv[y]), g.mul(x, y)); };
    for (std::uint32_t x = 0; x < g.N; ++x)
        for (std::uint32_t y = 0; y < g.N; ++y) {
            if (comm(x, powp[y]) != 0) return false;
            const auto c = comm(x, y);
            for (std::uint32_t z = 0; z < g.N; ++z)
                if (comm(c, z) != 0) return false;
        }
    return true;
}

}  // namespace porc
