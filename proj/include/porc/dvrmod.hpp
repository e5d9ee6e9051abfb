#pragma once

// Finite modules M_lambda over DVR quotients: submodule enumeration, Hall numbers and their
// polynomials, chain counts, automorphisms and the map beta to GL(B/pB) x GL(B[p]).
//
// M_lambda = R/t^{l_1} + ... + R/t^{l_s} is realised inside R^s (R = o/t^K, K = l_1) as the
// vectors whose a-th coordinate lies in t^{K - l_a} R. Submodules are held in Howell normal
// form, which is unique, so it doubles as a hash key.

#include "porc/dvr.hpp"
#include "porc/matrix.hpp"
#include "porc/partition.hpp"
#include "porc/qpoly.hpp"

#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace porc {

using RVec = std::vector<Dvr::Elem>;

struct U64VecHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::size_t h = v.size();
        for (auto x : v) hash_combine(h, std::hash<std::uint64_t>()(x));
        return h;
    }
};

/// Howell normal form of a submodule of R^s: echelon rows with pivots t^{val}, entries above
/// each pivot reduced to canonical residues, and closed under the annihilator of each pivot.
struct Howell {
    std::vector<RVec> rows;
    std::vector<int> pivot_col, pivot_val;

    /// log_q |N|.
    int log_size(int K) const {
        int e = 0;
        for (int v : pivot_val) e += K - v;
        return e;
    }
    std::vector<std::uint64_t> key() const {
        std::vector<std::uint64_t> k;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            k.push_back(static_cast<std::uint64_t>(pivot_col[i]));
            k.insert(k.end(), rows[i].begin(), rows[i].end());
        }
        return k;
    }
};

inline Howell howell_form(const Dvr& R, std::vector<RVec> work, int s) {
    const int K = R.K();
    Howell h;
    for (int col = 0; col < s; ++col) {
        int best = -1, best_v = K;
        for (std::size_t i = 0; i < work.size(); ++i) {
            const int v = R.valuation(work[i][static_cast<std::size_t>(col)]);
            if (v < best_v) {
                best_v = v;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) continue;
        RVec piv = work[static_cast<std::size_t>(best)];
        work.erase(work.begin() + best);
        const Dvr::Elem unit = R.div_t_pow(piv[static_cast<std::size_t>(col)], best_v);
        const Dvr::Elem uinv = R.inv(unit);
        for (auto& x : piv) x = R.mul(x, uinv);
        piv[static_cast<std::size_t>(col)] = R.t_pow(best_v);
        std::vector<RVec> next;
        for (auto& r : work) {
            const Dvr::Elem e = r[static_cast<std::size_t>(col)];
            if (e != 0) {
                const Dvr::Elem c = R.div_t_pow(e, best_v);
                for (int j = col; j < s; ++j)
                    r[static_cast<std::size_t>(j)] = R.sub(r[static_cast<std::size_t>(j)], R.mul(c, piv[static_cast<std::size_t>(j)]));
            }
            bool zero = true;
            for (auto x : r) zero &= x == 0;
            if (!zero) next.push_back(std::move(r));
        }
        if (best_v > 0) {
            RVec ann(static_cast<std::size_t>(s));
            bool zero = true;
            for (int j = 0; j < s; ++j) {
                ann[static_cast<std::size_t>(j)] = R.mul_t_pow(piv[static_cast<std::size_t>(j)], K - best_v);
                zero &= ann[static_cast<std::size_t>(j)] == 0;
            }
            if (!zero) next.push_back(std::move(ann));
        }
        work = std::move(next);
        h.rows.push_back(std::move(piv));
        h.pivot_col.push_back(col);
        h.pivot_val.push_back(best_v);
    }
    // Reduce entries above pivots to residues modulo the pivot.
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        const auto col = static_cast<std::size_t>(h.pivot_col[i]);
        const int v = h.pivot_val[i];
        for (std::size_t k = 0; k < i; ++k) {
            const Dvr::Elem e = h.rows[k][col];
            // Codes split as e = (e mod q^v) + q^v * (e div q^v) in both kinds of ring.
            const Dvr::Elem c = e / R.residues(v);
            if (c == 0) continue;
            for (std::size_t j = col; j < static_cast<std::size_t>(s); ++j)
                h.rows[k][j] = R.sub(h.rows[k][j], R.mul(c, h.rows[i][j]));
        }
    }
    return h;
}

inline bool howell_contains(const Dvr& R, const Howell& h, RVec x) {
    std::size_t next = 0;
    for (std::size_t col = 0; col < x.size(); ++col) {
        if (next < h.rows.size() && static_cast<std::size_t>(h.pivot_col[next]) == col) {
            const int v = h.pivot_val[next];
            if (R.valuation(x[col]) < v) return false;
            const Dvr::Elem c = R.div_t_pow(x[col], v);
            for (std::size_t j = col; j < x.size(); ++j) x[j] = R.sub(x[j], R.mul(c, h.rows[next][j]));
            ++next;
        } else if (x[col] != 0) {
            return false;
        }
    }
    return true;
}

/// Partition from the sizes log_q |t^k M| for k = 0..K: consecutive differences count the
/// parts exceeding k.
inline Partition partition_from_profile(const std::vector<int>& logs) {
    std::vector<int> parts;
    for (std::size_t k = 0; k + 1 < logs.size(); ++k) {
        const int c = logs[k] - logs[k + 1];
        if (c < 0) throw InternalInconsistency("non-monotone valuation profile");
        for (int i = static_cast<int>(parts.size()); i < c; ++i) parts.push_back(0);
        for (int i = 0; i < c; ++i) ++parts[static_cast<std::size_t>(i)];
    }
    return Partition(parts);
}

/// Canonical representative of the coset x + N, N given in Howell form.
inline RVec howell_reduce(const Dvr& R, const Howell& h, RVec x) {
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        const auto col = static_cast<std::size_t>(h.pivot_col[i]);
        const Dvr::Elem c = x[col] / R.residues(h.pivot_val[i]);
        if (c == 0) continue;
        for (std::size_t j = col; j < x.size(); ++j) x[j] = R.sub(x[j], R.mul(c, h.rows[i][j]));
    }
    return x;
}

/// M_lambda over a DVR quotient with K = lambda_1 (or 1 for the zero module).
class FiniteModule {
public:
    FiniteModule(Partition lambda, Dvr::Kind kind, std::uint64_t q)
        : lambda_(std::move(lambda)),
          R_(kind == Dvr::Kind::Integers ? Dvr::integers(q, std::max(1, lambda_.largest()))
                                         : Dvr::power_series(q, std::max(1, lambda_.largest()))) {}
    FiniteModule(Partition lambda, const Dvr& R) : FiniteModule(std::move(lambda), R.kind(), R.q()) {
        if (R.K() < lambda_.largest()) throw DomainError("ring exponent K is smaller than lambda_1");
    }

    const Partition& lambda() const { return lambda_; }
    const Dvr& ring() const { return R_; }
    int rank() const { return lambda_.length(); }
    int K() const { return R_.K(); }
    BigInt order() const { return big_pow(BigInt(R_.q()), static_cast<unsigned>(lambda_.weight())); }

    /// Generators t^{K - l_a} e_a, scaled further by t^k.
    std::vector<RVec> generators(int k = 0) const {
        std::vector<RVec> g;
        for (int a = 0; a < rank(); ++a) {
            RVec v(static_cast<std::size_t>(rank()), 0);
            v[static_cast<std::size_t>(a)] = R_.t_pow(K() - lambda_.parts[static_cast<std::size_t>(a)] + k);
            g.push_back(v);
        }
        return g;
    }

    /// Element with coordinates c_a (each mod t^{l_a}) in the ambient R^s.
    RVec embed(const RVec& coords) const {
        RVec v(coords.size());
        for (std::size_t a = 0; a < coords.size(); ++a)
            v[a] = R_.mul_t_pow(R_.mod_t_pow(coords[a], lambda_.parts[a]), K() - lambda_.parts[a]);
        return v;
    }

    /// Visits every element (ambient coordinates).
    template <class Fn>
    void for_each_element(Fn&& fn) const {
        const int s = rank();
        std::vector<std::uint64_t> radix(static_cast<std::size_t>(s));
        for (int a = 0; a < s; ++a) radix[static_cast<std::size_t>(a)] = R_.residues(lambda_.parts[static_cast<std::size_t>(a)]);
        RVec c(static_cast<std::size_t>(s), 0);
        for (;;) {
            fn(embed(c));
            int a = 0;
            while (a < s && ++c[static_cast<std::size_t>(a)] == radix[static_cast<std::size_t>(a)]) c[static_cast<std::size_t>(a++)] = 0;
            if (a == s) break;
        }
    }

    Howell span(const std::vector<RVec>& gens) const { return howell_form(R_, gens, rank()); }

    /// Isomorphism type of a submodule from the sizes |t^k N|.
    Partition type_of(const Howell& n) const {
        std::vector<int> logs;
        for (int k = 0; k <= K(); ++k) {
            std::vector<RVec> g;
            for (const auto& r : n.rows) {
                RVec v(r.size());
                for (std::size_t j = 0; j < r.size(); ++j) v[j] = R_.mul_t_pow(r[j], k);
                g.push_back(v);
            }
            logs.push_back(span(g).log_size(K()));
        }
        return from_profile(logs);
    }

    /// Isomorphism type of M / N from |t^k M + N| / |N|.
    Partition quotient_type(const Howell& n) const {
        const int base = n.log_size(K());
        std::vector<int> logs;
        for (int k = 0; k <= K(); ++k) {
            auto g = generators(k);
            g.insert(g.end(), n.rows.begin(), n.rows.end());
            logs.push_back(span(g).log_size(K()) - base);
        }
        return from_profile(logs);
    }

    /// All submodules in Howell form (breadth-first over simple extensions N + Rx with tx in N).
    std::vector<Howell> submodules() const {
        if (order() > limits().module_size)
            throw Refusal("module of type " + lambda_.str() + " over " + R_.str() + " exceeds the module-size cap", order());
        std::vector<Howell> out;
        std::unordered_set<std::vector<std::uint64_t>, U64VecHash> seen;
        out.push_back(Howell{});
        seen.insert(out.back().key());
        // N + Rx only depends on x up to units, so keep x whose first nonzero coordinate is t^v.
        std::vector<RVec> elems;
        for_each_element([&](const RVec& v) {
            for (auto c : v)
                if (c != 0) {
                    if (c == R_.t_pow(R_.valuation(c))) elems.push_back(v);
                    return;
                }
        });
        for (std::size_t head = 0; head < out.size(); ++head) {
            const Howell cur = out[head];
            for (const auto& x : elems) {
                RVec tx(x.size());
                for (std::size_t j = 0; j < x.size(); ++j) tx[j] = R_.mul_t_pow(x[j], 1);
                if (!howell_contains(R_, cur, tx) || howell_contains(R_, cur, x)) continue;
                auto gens = cur.rows;
                gens.push_back(x);
                Howell next = span(gens);
                if (seen.insert(next.key()).second) out.push_back(std::move(next));
            }
        }
        return out;
    }

private:
    static Partition from_profile(const std::vector<int>& logs) { return partition_from_profile(logs); }

    Partition lambda_;
    Dvr R_;
};

using HallTable = std::map<std::pair<Partition, Partition>, std::uint64_t>;

/// Counts of submodules N of M_lambda by (type of N, type of M_lambda / N). Cached.
inline const HallTable& hall_table(const Partition& lambda, Dvr::Kind kind, std::uint64_t q) {
    using Key = std::tuple<Partition, int, std::uint64_t>;
    static std::mutex mu;
    static std::map<Key, HallTable> cache;
    const Key key{lambda, static_cast<int>(kind), q};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    HallTable t;
    const FiniteModule M(lambda, kind, q);
    for (const auto& n : M.submodules()) ++t[{M.type_of(n), M.quotient_type(n)}];
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(t)).first->second;
}

inline std::uint64_t hall_number(const Partition& lambda, const Partition& mu, const Partition& nu, const Dvr& R) {
    if (R.K() < lambda.largest()) throw DomainError("ring exponent K is smaller than lambda_1");
    if (mu.weight() + nu.weight() != lambda.weight()) return 0;
    const auto& t = hall_table(lambda, R.kind(), R.q());
    auto it = t.find({mu, nu});
    return it == t.end() ? 0 : it->second;
}

/// Chains 0 = N_0 <= N_1 <= ... <= N_r = M_lambda with N_i / N_{i-1} of type mus[i-1].
inline BigInt chain_count(const Partition& lambda, const std::vector<Partition>& mus, const Dvr& R) {
    if (mus.empty()) return lambda.empty() ? 1 : 0;
    int total = 0;
    for (const auto& m : mus) total += m.weight();
    if (total != lambda.weight()) return 0;
    if (mus.size() == 1) return mus[0] == lambda ? 1 : 0;
    const std::vector<Partition> rest(mus.begin() + 1, mus.end());
    BigInt sum = 0;
    for (const auto& [types, count] : hall_table(lambda, R.kind(), R.q())) {
        if (types.first != mus[0]) continue;
        const Partition& nu = types.second;
        sum += BigInt(count) * chain_count(nu, rest, Dvr(R.kind() == Dvr::Kind::Integers ? Dvr::integers(R.q(), std::max(1, nu.largest()))
                                                                                      : Dvr::power_series(R.q(), std::max(1, nu.largest()))));
    }
    return sum;
}

using HallPolyTable = std::map<std::pair<Partition, Partition>, QPoly>;

/// Hall polynomials g^lambda_{mu nu}(q) for all (mu, nu), interpolated from exact counts at
/// 1 + |lambda|^2 prime powers (Z/p^K at primes, F_q[t]/(t^K) otherwise) and validated at one
/// further prime power.
inline const HallPolyTable& hall_polynomials(const Partition& lambda) {
    static std::mutex mu;
    static std::map<Partition, HallPolyTable> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(lambda);
        if (it != cache.end()) return it->second;
    }
    const int w = lambda.weight();
    const auto pts = prime_powers_from(2, static_cast<std::size_t>(w * w) + 2);
    std::vector<const HallTable*> tables;
    for (auto q : pts) tables.push_back(&hall_table(lambda, is_prime(q) ? Dvr::Kind::Integers : Dvr::Kind::PowerSeries, q));
    std::set<std::pair<Partition, Partition>> keys;
    for (const auto* t : tables)
        for (const auto& kv : *t) keys.insert(kv.first);
    HallPolyTable out;
    for (const auto& key : keys) {
        std::vector<BigInt> xs, ys;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            xs.emplace_back(pts[i]);
            auto it = tables[i]->find(key);
            ys.emplace_back(it == tables[i]->end() ? 0 : it->second);
        }
        QPoly p = interpolate(xs, ys);
        auto it = tables.back()->find(key);
        const BigInt held = it == tables.back()->end() ? BigInt(0) : BigInt(it->second);
        if (p.eval(Rational(BigInt(pts.back()))) != Rational(held))
            throw InternalInconsistency("Hall polynomial for " + lambda.str() + key.first.str() + key.second.str() +
                                        " misses the held-out point q=" + std::to_string(pts.back()));
        out.emplace(key, std::move(p));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(lambda, std::move(out)).first->second;
}

inline QPoly hall_polynomial(const Partition& lambda, const Partition& mu, const Partition& nu) {
    if (mu.weight() + nu.weight() != lambda.weight()) return {};
    const auto& t = hall_polynomials(lambda);
    auto it = t.find({mu, nu});
    return it == t.end() ? QPoly{} : it->second;
}

/// Chain count evaluated at an arbitrary residue-field size Q through the Hall polynomials.
inline BigInt chain_count_at(const Partition& lambda, const std::vector<Partition>& mus, const BigInt& Q) {
    if (mus.empty()) return lambda.empty() ? 1 : 0;
    int total = 0;
    for (const auto& m : mus) total += m.weight();
    if (total != lambda.weight()) return 0;
    if (mus.size() == 1) return mus[0] == lambda ? 1 : 0;
    if (mus[0].empty()) return chain_count_at(lambda, std::vector<Partition>(mus.begin() + 1, mus.end()), Q);
    const std::vector<Partition> rest(mus.begin() + 1, mus.end());
    BigInt sum = 0;
    for (const auto& [types, poly] : hall_polynomials(lambda)) {
        if (types.first != mus[0]) continue;
        const BigInt h = poly.eval_int(Q);
        if (h != 0) sum += h * chain_count_at(types.second, rest, Q);
    }
    return sum;
}

// ---------------------------------------------------------------------------------------------
// Automorphisms

/// a_lambda(Q) = |Aut M_lambda| for residue field size Q, by the block structure of the matrix form:
/// entries (a, b) carry min(l_a, l_b) free digits and the residues of the diagonal blocks must
/// be invertible.
inline BigInt aut_order_formula(const Partition& lambda, const BigInt& Q) {
    const auto& l = lambda.parts;
    unsigned free_digits = 0;
    for (std::size_t a = 0; a < l.size(); ++a)
        for (std::size_t b = 0; b < l.size(); ++b)
            if (l[a] != l[b]) free_digits += static_cast<unsigned>(std::min(l[a], l[b]));
    BigInt r = big_pow(Q, free_digits);
    for (auto [mu, u] : lambda.blocks()) {
        BigInt gl = 1;
        const BigInt Qu = big_pow(Q, static_cast<unsigned>(u));
        for (int i = 0; i < u; ++i) gl *= Qu - big_pow(Q, static_cast<unsigned>(i));
        r *= gl * big_pow(Q, static_cast<unsigned>((mu - 1) * u * u));
    }
    return r;
}

/// Polynomial a_lambda(q), interpolated with the usual held-out validation.
inline QPoly aut_polynomial(const Partition& lambda) {
    const int w = std::max(1, lambda.weight());
    return interpolate_validated([&](std::uint64_t q) { return aut_order_formula(lambda, BigInt(q)); }, w * w, "aut_polynomial");
}

/// Automorphism of M_lambda as a matrix: h(e_b) = sum_a x[a][b] e_a, with x[a][b] stored as its
/// canonical residue mod t^{l_a}. Divisibility by t^{l_a - l_b} is implied when l_a > l_b.
struct AutMatrix {
    int s = 0;
    std::vector<Dvr::Elem> x;

    Dvr::Elem at(int a, int b) const { return x[static_cast<std::size_t>(a) * s + b]; }
    Dvr::Elem& at(int a, int b) { return x[static_cast<std::size_t>(a) * s + b]; }
    bool operator==(const AutMatrix&) const = default;
    auto operator<=>(const AutMatrix&) const = default;

    static AutMatrix identity(int s) {
        AutMatrix m{s, std::vector<Dvr::Elem>(static_cast<std::size_t>(s) * s, 0)};
        for (int a = 0; a < s; ++a) m.at(a, a) = 1;
        return m;
    }
};

namespace aut {

inline AutMatrix compose(const FiniteModule& M, const AutMatrix& h1, const AutMatrix& h2) {
    const Dvr& R = M.ring();
    const auto& l = M.lambda().parts;
    AutMatrix r{h1.s, std::vector<Dvr::Elem>(h1.x.size(), 0)};
    for (int a = 0; a < r.s; ++a)
        for (int b = 0; b < r.s; ++b) {
            Dvr::Elem acc = 0;
            for (int c = 0; c < r.s; ++c) acc = R.add(acc, R.mul(h1.at(a, c), h2.at(c, b)));
            r.at(a, b) = R.mod_t_pow(acc, l[static_cast<std::size_t>(a)]);
        }
    return r;
}

/// Image of an element given by coordinates (mod t^{l_b}).
inline RVec apply(const FiniteModule& M, const AutMatrix& h, const RVec& coords) {
    const Dvr& R = M.ring();
    const auto& l = M.lambda().parts;
    RVec out(coords.size());
    for (int a = 0; a < h.s; ++a) {
        Dvr::Elem acc = 0;
        for (int b = 0; b < h.s; ++b) acc = R.add(acc, R.mul(h.at(a, b), coords[static_cast<std::size_t>(b)]));
        out[static_cast<std::size_t>(a)] = R.mod_t_pow(acc, l[static_cast<std::size_t>(a)]);
    }
    return out;
}

/// True iff the matrix defines an endomorphism that is bijective (residue matrix invertible).
inline bool is_automorphism(const FiniteModule& M, const AutMatrix& h) {
    const Dvr& R = M.ring();
    const auto& l = M.lambda().parts;
    Mat y(h.s, h.s);
    for (int a = 0; a < h.s; ++a)
        for (int b = 0; b < h.s; ++b) {
            const auto la = l[static_cast<std::size_t>(a)], lb = l[static_cast<std::size_t>(b)];
            if (h.at(a, b) >= R.residues(la)) return false;
            if (la > lb && R.valuation(h.at(a, b)) < la - lb) return false;
            y.at(a, b) = R.residue(h.at(a, b));
        }
    return mat::invertible(R.residue_field(), y);
}

}  // namespace aut

/// Visits every automorphism of M_lambda exactly once: invertible residues on the diagonal
/// blocks, every admissible value elsewhere. Refuses above the group-size cap.
inline void aut_generate(const FiniteModule& M, const std::function<void(const AutMatrix&)>& visit) {
    const Dvr& R = M.ring();
    const std::uint64_t q = R.q();
    const auto& l = M.lambda().parts;
    const int s = M.rank();
    const BigInt order = aut_order_formula(M.lambda(), BigInt(q));
    if (order > limits().group_size) throw Refusal("Aut(M" + M.lambda().str() + ") exceeds the group-size cap", order);
    if (s == 0) {
        visit(AutMatrix{0, {}});
        return;
    }
    // Free digits: (entry, radix, scale) with entry += digit * scale.
    struct Slot {
        std::size_t entry;
        std::uint64_t radix, scale;
    };
    std::vector<Slot> slots;
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
            const auto la = l[static_cast<std::size_t>(a)], lb = l[static_cast<std::size_t>(b)];
            const std::size_t e = static_cast<std::size_t>(a) * s + b;
            if (la == lb) {
                if (la > 1) slots.push_back({e, R.residues(la - 1), q});  // higher digits over the residue
            } else if (la < lb) {
                slots.push_back({e, R.residues(la), 1});
            } else {
                slots.push_back({e, R.residues(lb), R.residues(la - lb)});
            }
        }
    const auto blocks = M.lambda().blocks();
    std::vector<std::vector<Mat>> gl;
    for (auto [mu, u] : blocks) gl.push_back(gl_list(u, q));
    AutMatrix h{s, std::vector<Dvr::Elem>(static_cast<std::size_t>(s) * s, 0)};
    std::vector<Dvr::Elem> residue_part(h.x.size(), 0);
    std::vector<std::uint64_t> digit(slots.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t blk, int start) {
        if (blk == blocks.size()) {
            std::fill(digit.begin(), digit.end(), 0);
            for (;;) {
                h.x = residue_part;
                for (std::size_t i = 0; i < slots.size(); ++i) h.x[slots[i].entry] += digit[i] * slots[i].scale;
                visit(h);
                std::size_t i = 0;
                while (i < slots.size() && ++digit[i] == slots[i].radix) digit[i++] = 0;
                if (i == slots.size()) break;
            }
            return;
        }
        const int u = blocks[blk].second;
        for (const auto& g : gl[blk]) {
            for (int i = 0; i < u; ++i)
                for (int j = 0; j < u; ++j) residue_part[static_cast<std::size_t>(start + i) * s + (start + j)] = g.at(i, j);
            rec(blk + 1, start + u);
        }
    };
    rec(0, 0);
}

/// |Aut M_lambda| by exhaustive generation.
inline BigInt aut_order(const Partition& lambda, const Dvr& R) {
    const FiniteModule M(lambda, R);
    std::uint64_t n = 0;
    aut_generate(M, [&](const AutMatrix&) { ++n; });
    return n;
}

/// Pair (Y, Z): action of h on B/tB (basis e_a) and on B[t] (basis t^{l_a - 1} e_a).
struct BetaPair {
    Mat Y, Z;
    bool operator==(const BetaPair&) const = default;
    auto operator<=>(const BetaPair&) const = default;
};

inline BetaPair beta_of(const FiniteModule& M, const AutMatrix& h) {
    const Dvr& R = M.ring();
    const auto& l = M.lambda().parts;
    BetaPair b{Mat(h.s, h.s), Mat(h.s, h.s)};
    for (int a = 0; a < h.s; ++a)
        for (int c = 0; c < h.s; ++c) {
            const auto la = l[static_cast<std::size_t>(a)], lc = l[static_cast<std::size_t>(c)];
            const Dvr::Elem x = h.at(a, c);
            b.Y.at(a, c) = R.residue(x);
            const Dvr::Elem lifted = R.mod_t_pow(R.mul_t_pow(x, lc - 1), la);
            b.Z.at(a, c) = R.residue(R.div_t_pow(lifted, la - 1));
        }
    return b;
}

/// Block sizes u of the distinct parts of lambda (in decreasing part order).
inline std::vector<int> block_sizes(const Partition& lambda) {
    std::vector<int> u;
    for (auto [mu, m] : lambda.blocks()) u.push_back(m);
    return u;
}

/// Membership in im beta: Y block-lower-triangular, Z block-upper-triangular, equal diagonal blocks.
inline bool beta_image_contains(const std::vector<int>& u, const BetaPair& pr) {
    int s = 0;
    for (int x : u) s += x;
    if (pr.Y.rows != s || pr.Y.cols != s || pr.Z.rows != s || pr.Z.cols != s)
        throw DomainError("beta_image_contains: shape does not match the block sizes");
    std::vector<int> block_of;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (int k = 0; k < u[i]; ++k) block_of.push_back(static_cast<int>(i));
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
            const int i = block_of[static_cast<std::size_t>(a)], j = block_of[static_cast<std::size_t>(b)];
            if (i < j && pr.Y.at(a, b) != 0) return false;
            if (i > j && pr.Z.at(a, b) != 0) return false;
            if (i == j && pr.Y.at(a, b) != pr.Z.at(a, b)) return false;
        }
    return true;
}

/// |im beta| = prod |GL_{u_i}(q)| * q^{2 sum_{i<j} u_i u_j}.
inline BigInt beta_image_order(const std::vector<int>& u, std::uint64_t q) {
    BigInt r = 1;
    unsigned off = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        r *= gl_order(u[i], q);
        for (std::size_t j = i + 1; j < u.size(); ++j) off += static_cast<unsigned>(2 * u[i] * u[j]);
    }
    return r * big_pow(BigInt(q), off);
}

/// Visits every pair satisfying the membership criterion.
inline void beta_image_iter(const std::vector<int>& u, std::uint64_t q, const std::function<void(const BetaPair&)>& visit) {
    const BigInt order = beta_image_order(u, q);
    if (order > limits().group_size) throw Refusal("im beta exceeds the group-size cap", order);
    int s = 0;
    std::vector<int> start;
    for (int x : u) {
        start.push_back(s);
        s += x;
    }
    std::vector<std::vector<Mat>> gl;
    for (int x : u) gl.push_back(gl_list(x, q));
    // Free cells: Y below the diagonal blocks, Z above.
    std::vector<std::pair<int, int>> ycells, zcells;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j)
            for (int a = 0; a < u[i]; ++a)
                for (int b = 0; b < u[j]; ++b) {
                    if (i > j) ycells.emplace_back(start[i] + a, start[j] + b);
                    if (i < j) zcells.emplace_back(start[i] + a, start[j] + b);
                }
    const std::uint64_t nfree = pow_u64(q, static_cast<unsigned>(ycells.size() + zcells.size()));
    BetaPair pr{Mat(s, s), Mat(s, s)};
    std::function<void(std::size_t)> rec = [&](std::size_t blk) {
        if (blk == u.size()) {
            for (std::uint64_t code = 0; code < nfree; ++code) {
                std::uint64_t c = code;
                for (auto [a, b] : ycells) {
                    pr.Y.at(a, b) = static_cast<Field::Elem>(c % q);
                    c /= q;
                }
                for (auto [a, b] : zcells) {
                    pr.Z.at(a, b) = static_cast<Field::Elem>(c % q);
                    c /= q;
                }
                visit(pr);
            }
            return;
        }
        for (const auto& g : gl[blk]) {
            for (int a = 0; a < u[blk]; ++a)
                for (int b = 0; b < u[blk]; ++b) {
                    pr.Y.at(start[blk] + a, start[blk] + b) = g.at(a, b);
                    pr.Z.at(start[blk] + a, start[blk] + b) = g.at(a, b);
                }
            rec(blk + 1);
        }
    };
    rec(0);
}

}  // namespace porc
