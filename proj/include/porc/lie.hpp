#pragma once

// Finite Lie rings of class <= 2 given by a bracket table on a basis of their additive group
// M_mu = sum Z/p^{mu_a}, abelian presentations via local Smith normal form, and explicit
// element tables with an isomorphism search.

#include "porc/dvr.hpp"
#include "porc/partition.hpp"

#include <numeric>
#include <unordered_map>

namespace porc {

/// Additive group M_type with basis e_a of order p^{type_a}; bracket[i * g + j] holds the
/// coordinates of [e_i, e_j] (coordinate a reduced mod p^{type_a}).
struct LieRing {
    std::uint64_t p = 2;
    Partition type;
    std::vector<std::vector<std::uint64_t>> bracket;

    using Vec = std::vector<std::uint64_t>;

    int gens() const { return type.length(); }
    int n() const { return type.weight(); }
    std::uint64_t modulus(int a) const { return pow_u64(p, static_cast<unsigned>(type.parts[static_cast<std::size_t>(a)])); }
    std::uint64_t K() const { return pow_u64(p, static_cast<unsigned>(std::max(1, type.largest()))); }
    std::uint64_t order() const { return pow_u64(p, static_cast<unsigned>(n())); }

    const Vec& br(int i, int j) const { return bracket[static_cast<std::size_t>(i * gens() + j)]; }

    Vec reduce(Vec v) const {
        for (int a = 0; a < gens(); ++a) v[static_cast<std::size_t>(a)] %= modulus(a);
        return v;
    }
    Vec add(const Vec& x, const Vec& y) const {
        Vec r(x.size());
        for (int a = 0; a < gens(); ++a) r[static_cast<std::size_t>(a)] = (x[static_cast<std::size_t>(a)] + y[static_cast<std::size_t>(a)]) % modulus(a);
        return r;
    }
    Vec scale(std::uint64_t c, const Vec& x) const {
        Vec r(x.size());
        for (int a = 0; a < gens(); ++a)
            r[static_cast<std::size_t>(a)] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(c % K()) * x[static_cast<std::size_t>(a)] % modulus(a));
        return r;
    }
    Vec lie(const Vec& x, const Vec& y) const {
        Vec r(static_cast<std::size_t>(gens()), 0);
        for (int i = 0; i < gens(); ++i)
            for (int j = 0; j < gens(); ++j) {
                const std::uint64_t c = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x[static_cast<std::size_t>(i)]) * y[static_cast<std::size_t>(j)] % K());
                if (c) r = add(r, scale(c, br(i, j)));
            }
        return r;
    }

    /// Index of an element in the mixed-radix enumeration (coordinate 0 least significant).
    std::uint64_t index(const Vec& x) const {
        std::uint64_t r = 0;
        for (int a = gens(); a-- > 0;) r = r * modulus(a) + x[static_cast<std::size_t>(a)];
        return r;
    }
    Vec element(std::uint64_t idx) const {
        Vec x(static_cast<std::size_t>(gens()));
        for (int a = 0; a < gens(); ++a) {
            x[static_cast<std::size_t>(a)] = idx % modulus(a);
            idx /= modulus(a);
        }
        return x;
    }
};

/// The table is alternating, bilinear over Z, and satisfies pL + [L, L] ⊆ Z(L) (hence class <= 2
/// and the Jacobi identity); checked on the basis, which suffices by bilinearity.
inline bool is_central_frattini_lie(const LieRing& L) {
    const int g = L.gens();
    const LieRing::Vec zero(static_cast<std::size_t>(g), 0);
    for (int i = 0; i < g; ++i) {
        if (L.br(i, i) != zero) return false;
        for (int j = 0; j < g; ++j) {
            const auto& c = L.br(i, j);
            if (L.reduce(c) != c) return false;
            if (L.add(c, L.br(j, i)) != zero) return false;
            if (L.scale(L.p, c) != zero) return false;  // [pL, L] = 0, which also makes the table well defined
            for (int k = 0; k < g; ++k) {
                LieRing::Vec e(static_cast<std::size_t>(g), 0);
                e[static_cast<std::size_t>(k)] = 1;
                if (L.lie(c, e) != zero) return false;  // [[L, L], L] = 0
            }
        }
    }
    return true;
}

/// Abelian group on generators x_0..x_{g-1} modulo integer relation rows, with a bracket
/// given on the generators in generator coordinates; returns the Lie ring on a basis adapted to
/// the invariant-factor decomposition (local Smith normal form modulo p^N, N > exponent).
inline LieRing lie_ring_from_relations(std::uint64_t p, int g, const std::vector<std::vector<std::int64_t>>& rels,
                                       const std::vector<std::vector<std::vector<std::int64_t>>>& brackets, int N) {
    const Dvr R = Dvr::integers(p, N);
    const auto lift = [&](std::int64_t v) {
        const auto m = static_cast<std::int64_t>(R.size());
        return static_cast<Dvr::Elem>(((v % m) + m) % m);
    };
    std::vector<std::vector<Dvr::Elem>> A;
    for (const auto& r : rels) {
        std::vector<Dvr::Elem> row;
        for (auto v : r) row.push_back(lift(v));
        A.push_back(row);
    }
    // Working mod p^N adds the relations p^N x_i = 0, harmless when p^N kills the group.
    const auto gz = static_cast<std::size_t>(g);
    std::vector<std::vector<Dvr::Elem>> V(gz, std::vector<Dvr::Elem>(gz, 0)), Vinv(V);
    for (std::size_t i = 0; i < gz; ++i) V[i][i] = Vinv[i][i] = 1;
    std::vector<int> val(gz, N);
    const std::size_t rows = A.size();
    for (std::size_t k = 0; k < gz; ++k) {
        std::size_t bi = rows, bj = gz;
        int bv = N;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < gz; ++j)
                if (A[i][j] != 0 && R.valuation(A[i][j]) < bv) {
                    bv = R.valuation(A[i][j]);
                    bi = i;
                    bj = j;
                }
        if (bi == rows) break;
        std::swap(A[k], A[bi]);
        if (bj != k) {
            for (auto& r : A) std::swap(r[k], r[bj]);
            for (auto& r : V) std::swap(r[k], r[bj]);
            std::swap(Vinv[k], Vinv[bj]);
        }
        const Dvr::Elem u = R.div_t_pow(A[k][k], bv), ui = R.inv(u);
        for (auto& r : A) r[k] = R.mul(r[k], ui);
        for (auto& r : V) r[k] = R.mul(r[k], ui);
        for (auto& x : Vinv[k]) x = R.mul(x, u);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == k || A[i][k] == 0) continue;
            const Dvr::Elem c = R.div_t_pow(A[i][k], bv);
            for (std::size_t j = 0; j < gz; ++j) A[i][j] = R.sub(A[i][j], R.mul(c, A[k][j]));
        }
        for (std::size_t j = 0; j < gz; ++j) {
            if (j == k || A[k][j] == 0) continue;
            // column j -= c * column k, so V's column j likewise and Vinv's row k += c * row j.
            const Dvr::Elem c = R.div_t_pow(A[k][j], bv);
            for (auto& r : A) r[j] = R.sub(r[j], R.mul(c, r[k]));
            for (auto& r : V) r[j] = R.sub(r[j], R.mul(c, r[k]));
            for (std::size_t i = 0; i < gz; ++i) Vinv[k][i] = R.add(Vinv[k][i], R.mul(c, Vinv[j][i]));
        }
        val[k] = bv;
    }
    for (int v : val)
        if (v >= N) throw DomainError("presentation does not define a group of exponent below p^N");
    // Keep nontrivial invariant factors, largest first.
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < gz; ++k)
        if (val[k] > 0) keep.push_back(k);
    std::stable_sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
    LieRing L;
    L.p = p;
    std::vector<int> parts;
    for (auto k : keep) parts.push_back(val[k]);
    L.type = Partition(parts);
    const int h = static_cast<int>(keep.size());
    const auto to_new = [&](const std::vector<Dvr::Elem>& old) {
        LieRing::Vec v(static_cast<std::size_t>(h));
        for (int a = 0; a < h; ++a) {
            Dvr::Elem acc = 0;
            for (std::size_t i = 0; i < gz; ++i) acc = R.add(acc, R.mul(old[i], V[i][keep[static_cast<std::size_t>(a)]]));
            v[static_cast<std::size_t>(a)] = acc;
        }
        return L.reduce(v);
    };
    for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b) {
            std::vector<Dvr::Elem> old(gz, 0);
            for (std::size_t i = 0; i < gz; ++i)
                for (std::size_t j = 0; j < gz; ++j) {
                    const Dvr::Elem c = R.mul(Vinv[keep[static_cast<std::size_t>(a)]][i], Vinv[keep[static_cast<std::size_t>(b)]][j]);
                    if (c == 0) continue;
                    for (std::size_t t = 0; t < gz; ++t) old[t] = R.add(old[t], R.mul(c, lift(brackets[i][j][t])));
                }
            L.bracket.push_back(to_new(old));
        }
    return L;
}

// ---------------------------------------------------------------------------------------------
// Explicit tables

/// A finite set 0..N-1 with a group operation and optionally a bracket, identity 0.
struct Table {
    std::uint32_t N = 0;
    std::vector<std::uint32_t> op;       // op[x * N + y]
    std::vector<std::uint32_t> bracket;  // empty for groups

    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return op[static_cast<std::size_t>(x) * N + y]; }
    std::uint32_t br(std::uint32_t x, std::uint32_t y) const { return bracket[static_cast<std::size_t>(x) * N + y]; }

    std::uint32_t inverse(std::uint32_t x) const {
        for (std::uint32_t y = 0; y < N; ++y)
            if (mul(x, y) == 0) return y;
        throw InternalInconsistency("table element without inverse");
    }
    std::uint32_t element_order(std::uint32_t x) const {
        std::uint32_t k = 1;
        for (std::uint32_t y = x; y != 0; y = mul(y, x)) ++k;
        return k;
    }
};

inline Table table_of(const LieRing& L) {
    const auto N = static_cast<std::uint32_t>(L.order());
    if (L.order() > 5000) throw Refusal("element table too large", BigInt(L.order()));
    Table t;
    t.N = N;
    t.op.resize(static_cast<std::size_t>(N) * N);
    t.bracket.resize(t.op.size());
    std::vector<LieRing::Vec> el;
    for (std::uint32_t i = 0; i < N; ++i) el.push_back(L.element(i));
    for (std::uint32_t i = 0; i < N; ++i)
        for (std::uint32_t j = 0; j < N; ++j) {
            t.op[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint32_t>(L.index(L.add(el[i], el[j])));
            t.bracket[static_cast<std::size_t>(i) * N + j] = static_cast<std::uint32_t>(L.index(L.lie(el[i], el[j])));
        }
    return t;
}

/// Cheap isomorphism invariants: order statistics, centre size, size of the commutator/bracket
/// image set and its span, order statistics within the centre.
inline std::vector<std::uint64_t> table_invariants(const Table& t) {
    std::map<std::uint32_t, std::uint64_t> orders, central_orders;
    std::vector<bool> central(t.N, true);
    std::vector<bool> in_image(t.N, false);
    for (std::uint32_t x = 0; x < t.N; ++x)
        for (std::uint32_t y = 0; y < t.N; ++y) {
            std::uint32_t c;
            if (t.bracket.empty()) {
                if (t.mul(x, y) != t.mul(y, x)) central[x] = false;
                c = t.mul(t.mul(t.inverse(x), t.inverse(y)), t.mul(x, y));
            } else {
                c = t.br(x, y);
                if (c != 0) central[x] = false;
            }
            in_image[c] = true;
        }
    for (std::uint32_t x = 0; x < t.N; ++x) {
        const auto o = t.element_order(x);
        ++orders[o];
        if (central[x]) ++central_orders[o];
    }
    std::vector<std::uint64_t> inv{t.N};
    for (auto [o, c] : orders) inv.insert(inv.end(), {o, c});
    inv.push_back(0);
    for (auto [o, c] : central_orders) inv.insert(inv.end(), {o, c});
    inv.push_back(static_cast<std::uint64_t>(std::count(in_image.begin(), in_image.end(), true)));
    return inv;
}

/// Greedy generating set: repeatedly add an element of largest order outside the generated subgroup.
inline std::vector<std::uint32_t> generating_set(const Table& t) {
    std::vector<std::uint32_t> gens;
    std::vector<bool> in(t.N, false);
    in[0] = true;
    std::vector<std::uint32_t> order(t.N);
    for (std::uint32_t x = 0; x < t.N; ++x) order[x] = t.element_order(x);
    for (;;) {
        std::uint32_t best = 0;
        for (std::uint32_t x = 0; x < t.N; ++x)
            if (!in[x] && (best == 0 || order[x] > order[best])) best = x;
        if (best == 0) return gens;
        gens.push_back(best);
        // Closure under right multiplication by all generators.
        std::vector<std::uint32_t> stack;
        for (std::uint32_t x = 0; x < t.N; ++x)
            if (in[x]) stack.push_back(x);
        while (!stack.empty()) {
            const auto x = stack.back();
            stack.pop_back();
            for (auto g : gens) {
                const auto y = t.mul(x, g);
                if (!in[y]) {
                    in[y] = true;
                    stack.push_back(y);
                }
            }
        }
    }
}

/// Tries to extend generator images to an isomorphism (group operation, and bracket if present).
inline bool extend_to_isomorphism(const Table& a, const Table& b, const std::vector<std::uint32_t>& gens,
                                  const std::vector<std::uint32_t>& images) {
    const std::uint32_t none = a.N;
    std::vector<std::uint32_t> phi(a.N, none);
    std::vector<bool> used(b.N, false);
    phi[0] = 0;
    used[0] = true;
    std::vector<std::uint32_t> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto x = queue[head];
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const auto y = a.mul(x, gens[k]);
            const auto fy = b.mul(phi[x], images[k]);
            if (phi[y] == none) {
                if (used[fy]) return false;
                phi[y] = fy;
                used[fy] = true;
                queue.push_back(y);
            } else if (phi[y] != fy) {
                return false;
            }
        }
    }
    if (queue.size() != a.N) return false;
    for (std::uint32_t x = 0; x < a.N; ++x)
        for (std::uint32_t y = 0; y < a.N; ++y) {
            if (phi[a.mul(x, y)] != b.mul(phi[x], phi[y])) return false;
            if (!a.bracket.empty() && phi[a.br(x, y)] != b.br(phi[x], phi[y])) return false;
        }
    return true;
}

/// Exhaustive isomorphism test, pruned by invariants and element orders; refuses when the
/// search space exceeds the group-size cap.
inline bool isomorphic(const Table& a, const Table& b) {
    if (a.N != b.N || a.bracket.empty() != b.bracket.empty()) return false;
    if (table_invariants(a) != table_invariants(b)) return false;
    const auto gens = generating_set(a);
    std::vector<std::vector<std::uint32_t>> cand(gens.size());
    BigInt space = 1;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto o = a.element_order(gens[k]);
        for (std::uint32_t y = 0; y < b.N; ++y)
            if (b.element_order(y) == o) cand[k].push_back(y);
        space *= cand[k].size();
    }
    if (space > limits().group_size) throw Refusal("isomorphism search space exceeds the group-size cap", space);
    std::vector<std::uint32_t> images(gens.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t k) {
        if (k == gens.size()) return extend_to_isomorphism(a, b, gens, images);
        for (auto y : cand[k]) {
            images[k] = y;
            if (rec(k + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

}  // namespace porc
