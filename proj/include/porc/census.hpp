#pragma once

// Central extensions 0 -> B -> E -> V -> 0 with B = M_lambda over Z_p and V = F_p^m elementary:
// the data space F = Hom(∧²(V/U), B[p]) ⊕ Hom(V, B/pB), the action of P(V; flag) x Aut(B),
// Burnside orbit counts (naive and class-weighted), the recursion isolating Z(E) = B, and the
// census of Lie rings of order p^n with pL + [L, L] ⊆ Z(L).

#include "porc/lie.hpp"
#include "porc/typelib.hpp"

#include <mutex>

namespace porc {

/// Space of extension data for V = F_p^m with flag of shape d (last part w = codim U_{l-1},
/// possibly 0) and B = M_lambda.
struct ExtensionSpace {
    int m = 0;
    std::vector<int> d;
    Partition lambda;
    std::uint64_t p = 2;
    int s = 0, w = 0, pairs = 0, D = 0;

    ExtensionSpace(int m_, std::vector<int> d_, Partition lambda_, std::uint64_t p_)
        : m(m_), d(std::move(d_)), lambda(std::move(lambda_)), p(p_) {
        if (!is_prime(p)) throw DomainError("extension space needs a prime p");
        if (d.empty()) throw DomainError("flag shape must be nonempty");
        int total = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] < 0 || (d[i] == 0 && i + 1 < d.size())) throw DomainError("flag shape parts must be positive (the last may be 0)");
            total += d[i];
        }
        if (total != m) throw DomainError("flag shape does not sum to m");
        s = lambda.length();
        w = d.back();
        pairs = w * (w - 1) / 2;
        D = s * pairs + m * s;
    }

    /// Block sizes of the acting parabolic: d without a trailing zero.
    std::vector<int> blocks() const {
        std::vector<int> b(d);
        if (b.back() == 0) b.pop_back();
        return b;
    }

    std::string str() const {
        std::string r = "m=" + std::to_string(m) + " d=(";
        for (std::size_t i = 0; i < d.size(); ++i) r += (i ? "," : "") + std::to_string(d[i]);
        return r + ") lambda=" + lambda.str() + " p=" + std::to_string(p);
    }
};

/// y: s x C(w,2) (columns are pairs i<j of the quotient basis, lexicographic); z: s x m.
struct ExtensionDatum {
    Mat y, z;
    bool operator==(const ExtensionDatum&) const = default;
    auto operator<=>(const ExtensionDatum&) const = default;

    static ExtensionDatum zero(const ExtensionSpace& X) { return {Mat(X.s, X.pairs), Mat(X.s, X.m)}; }

    std::vector<Field::Elem> coords() const {
        std::vector<Field::Elem> c(y.a);
        c.insert(c.end(), z.a.begin(), z.a.end());
        return c;
    }
    static ExtensionDatum from_coords(const ExtensionSpace& X, const std::vector<Field::Elem>& c) {
        ExtensionDatum x = zero(X);
        std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(x.y.a.size()), x.y.a.begin());
        std::copy(c.begin() + static_cast<std::ptrdiff_t>(x.y.a.size()), c.end(), x.z.a.begin());
        return x;
    }
};

namespace ext_detail {

/// Matrix of ∧²G on the lexicographic basis e_i ∧ e_j (i < j).
inline Mat wedge2(const Field& F, const Mat& G) {
    const int w = G.rows;
    std::vector<std::pair<int, int>> idx;
    for (int i = 0; i < w; ++i)
        for (int j = i + 1; j < w; ++j) idx.emplace_back(i, j);
    Mat r(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t rr = 0; rr < idx.size(); ++rr) {
            const auto [i, j] = idx[c];
            const auto [k, l] = idx[rr];
            r.at(static_cast<int>(rr), static_cast<int>(c)) = F.sub(F.mul(G.at(k, i), G.at(l, j)), F.mul(G.at(l, i), G.at(k, j)));
        }
    return r;
}

inline Mat kron(const Field& F, const Mat& A, const Mat& B) {
    Mat r(A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l) r.at(i * B.rows + k, j * B.cols + l) = F.mul(A.at(i, j), B.at(k, l));
    return r;
}

/// dim {x : P x = x Q} for square P (a x a), Q (b x b).
inline int intertwiner_dim(const Field& F, const Mat& P, const Mat& Q) {
    if (P.rows == 0 || Q.rows == 0) return 0;
    const Mat lhs = kron(F, Mat::identity(Q.rows), P);
    const Mat rhs = kron(F, mat::transpose(Q), Mat::identity(P.rows));
    return mat::kernel_dim(F, mat::sub(F, lhs, rhs));
}

}  // namespace ext_detail

/// log_p of the number of data fixed by (g, h), from the classes of g, gbar, Y, Z alone:
/// dim {z : Y z = z g} + dim {y : Z y = y ∧²gbar}.
inline int fix_exponent(const Field& F, const Mat& g, const Mat& gbar, const Mat& Y, const Mat& Z) {
    int e = ext_detail::intertwiner_dim(F, Y, g);
    if (gbar.rows >= 2) e += ext_detail::intertwiner_dim(F, Z, ext_detail::wedge2(F, gbar));
    return e;
}

inline bool preserves_flag(const Mat& g, const std::vector<int>& blocks) {
    int r0 = 0;
    for (int bi : blocks) {
        int c0 = 0;
        for (int bj : blocks) {
            if (c0 < r0)
                for (int a = 0; a < bi; ++a)
                    for (int b = 0; b < bj; ++b)
                        if (g.at(r0 + a, c0 + b) != 0) return false;
            c0 += bj;
        }
        r0 += bi;
    }
    return true;
}

/// (g, h) . (y, z) = (Z y ∧²(gbar^{-1}), Y z g^{-1}) with (Y, Z) = beta(h) and gbar the
/// action of g on V / U_{l-1} (the bottom-right w x w block).
inline ExtensionDatum action_apply(const ExtensionSpace& X, const Mat& g, const BetaPair& h, const ExtensionDatum& x) {
    const Field& F = Field::get(X.p);
    if (g.rows != X.m || !preserves_flag(g, X.blocks())) throw DomainError("action_apply: g does not preserve the flag");
    ExtensionDatum r;
    r.z = mat::mul(F, mat::mul(F, h.Y, x.z), mat::inverse(F, g));
    if (X.pairs > 0) {
        const Mat gbar = mat::submatrix(g, X.m - X.w, X.m - X.w, X.w, X.w);
        r.y = mat::mul(F, mat::mul(F, h.Z, x.y), ext_detail::wedge2(F, mat::inverse(F, gbar)));
    } else {
        r.y = Mat(X.s, 0);
    }
    return r;
}

inline ExtensionDatum action_apply(const ExtensionSpace& X, const Mat& g, const FiniteModule& B, const AutMatrix& h,
                                   const ExtensionDatum& x) {
    return action_apply(X, g, beta_of(B, h), x);
}

/// Number of fixed data: p^{dim ker(A - I)} for the D x D matrix A of the action.
inline BigInt fix_count(const ExtensionSpace& X, const Mat& g, const BetaPair& h) {
    const Field& F = Field::get(X.p);
    Mat A(X.D, X.D);
    for (int k = 0; k < X.D; ++k) {
        std::vector<Field::Elem> e(static_cast<std::size_t>(X.D), 0);
        e[static_cast<std::size_t>(k)] = 1;
        const auto img = action_apply(X, g, h, ExtensionDatum::from_coords(X, e)).coords();
        for (int r = 0; r < X.D; ++r) A.at(r, k) = img[static_cast<std::size_t>(r)];
    }
    return big_pow(BigInt(X.p), static_cast<unsigned>(mat::kernel_dim(F, mat::sub(F, A, Mat::identity(X.D)))));
}

/// Burnside over the full group P x Aut(B). Group elements are tallied by the conjugacy classes
/// of (g, gbar) and (Y, Z); the fixed-point count depends only on those classes, and is
/// evaluated from the assembled action matrix of one actual element of each tally.
inline BigInt orbit_count_naive(const ExtensionSpace& X) {
    if (X.m == 0 || X.s == 0) return 1;
    const auto blocks = X.blocks();
    const std::uint64_t p = X.p;
    const FiniteModule B(X.lambda, Dvr::Kind::Integers, p);
    const BigInt size = parabolic_order(blocks, p) * aut_order_formula(X.lambda, BigInt(p));
    if (size > limits().group_size) throw Refusal("naive orbit count over " + X.str() + " exceeds the group-size cap", size);
    const Field& F = Field::get(p);
    struct Tally {
        Mat rep;
        BetaPair pair;
        BigInt count = 0;
    };
    std::map<TupleClass, Tally> left, right;
    parabolic_iter(blocks, p, [&](const Mat& g) {
        TupleClass c{{class_of_matrix(F, g)}};
        if (X.pairs > 0) c.comps.push_back(class_of_matrix(F, mat::submatrix(g, X.m - X.w, X.m - X.w, X.w, X.w)));
        auto [it, fresh] = left.try_emplace(c);
        if (fresh) it->second.rep = g;
        it->second.count += 1;
    });
    aut_generate(B, [&](const AutMatrix& h) {
        const BetaPair b = beta_of(B, h);
        TupleClass c{{class_of_matrix(F, b.Y)}};
        if (X.pairs > 0) c.comps.push_back(class_of_matrix(F, b.Z));
        auto [it, fresh] = right.try_emplace(c);
        if (fresh) it->second.pair = b;
        it->second.count += 1;
    });
    BigInt total = 0;
    for (const auto& [cl, tl] : left)
        for (const auto& [cr, tr] : right) total += tl.count * tr.count * fix_count(X, tl.rep, tr.pair);
    return exact_div(total, size, "Burnside average (naive)");
}

/// Burnside grouped by conjugacy classes of GL(V) x GL(V/U_{l-1}) and GL(B/pB) x GL(B[p]),
/// weighted by the class intersections with im(alpha) (flag stabiliser) and im(beta).
inline BigInt orbit_count_typed(const ExtensionSpace& X) {
    if (X.m == 0 || X.s == 0) return 1;
    const std::uint64_t p = X.p;
    const Field& F = Field::get(p);
    const auto blocks = X.blocks();
    const bool two = X.pairs > 0;  // gbar matters only when ∧²(V/U) != 0
    struct Side {
        Mat a, b;
        BigInt weight;
    };
    std::vector<Side> left, right;
    std::map<TypeKey, BigInt> wmemo;
    const auto weight_left = [&](const TypeKey& t) {
        auto it = wmemo.find(t);
        if (it == wmemo.end()) it = wmemo.emplace(t, flag_image_intersection(t, blocks, p)).first;
        return it->second;
    };
    BigInt sum_left = 0;
    for_each_gl_class(X.m, p, [&](const ClassData& cg) {
        const Mat g = class_representative(F, cg);
        if (!two) {
            const BigInt wt = weight_left(type_of_class(TupleClass{{cg}}));
            if (wt != 0) left.push_back({g, Mat(0, 0), wt});
            sum_left += wt;
            return;
        }
        // Quotient classes: nu_f ⊆ kappa_f with sum deg(f) |nu_f| = w.
        ClassData cur;
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left_dim) {
            if (i == cg.size()) {
                if (left_dim != 0) return;
                const TypeKey t = type_of_class(TupleClass{{cg, cur}});
                const BigInt wt = weight_left(t);
                if (wt != 0) {
                    left.push_back({g, class_representative(F, cur), wt});
                    sum_left += wt;
                }
                return;
            }
            const auto& [f, kappa] = cg[i];
            const int deg = f.degree();
            for (int wt = 0; wt <= kappa.weight() && wt * deg <= left_dim; ++wt)
                for (const auto& nu : partitions_in_box(wt, kappa.length(), kappa.largest())) {
                    if (!contained_in(nu, kappa)) continue;
                    if (!nu.empty()) cur.emplace_back(f, nu);
                    rec(i + 1, left_dim - wt * deg);
                    if (!nu.empty()) cur.pop_back();
                }
        };
        rec(0, X.w);
    });
    if (sum_left != parabolic_order(blocks, p)) throw InternalInconsistency("flag-side class weights do not sum to |P| for " + X.str());

    const auto u = block_sizes(X.lambda);
    std::map<TypeKey, BigInt> rmemo;
    BigInt sum_right = 0;
    for_each_gl_class(X.s, p, [&](const ClassData& cy) {
        const Mat Y = class_representative(F, cy);
        // Z has the same characteristic polynomial: same polynomials, partitions of equal weight.
        ClassData cz;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == cy.size()) {
                const TypeKey t = type_of_class(TupleClass{{cy, cz}});
                auto it = rmemo.find(t);
                if (it == rmemo.end()) it = rmemo.emplace(t, aut_image_intersection(u, t, p)).first;
                if (it->second != 0) {
                    right.push_back({Y, class_representative(F, cz), it->second});
                    sum_right += it->second;
                }
                return;
            }
            for (const auto& nu : partitions_of(cy[i].second.weight())) {
                cz.emplace_back(cy[i].first, nu);
                rec(i + 1);
                cz.pop_back();
            }
        };
        rec(0);
    });
    const BigInt image = beta_image_order(u, p);
    if (sum_right != image) throw InternalInconsistency("Aut-side class weights do not sum to |im beta| for " + X.str());

    BigInt total = 0;
    std::vector<BigInt> ppow(static_cast<std::size_t>(X.D) + 1);
    for (int e = 0; e <= X.D; ++e) ppow[static_cast<std::size_t>(e)] = big_pow(BigInt(p), static_cast<unsigned>(e));
    for (const auto& l : left)
        for (const auto& r : right) {
            const int e = fix_exponent(F, l.a, l.b, r.a, r.b);
            total += l.weight * r.weight * ppow[static_cast<std::size_t>(e)];
        }
    return exact_div(total, sum_left * image, "Burnside average (typed)");
}

enum class Engine { Typed, Naive };

inline const char* engine_name(Engine e) { return e == Engine::Typed ? "typed" : "naive"; }

/// Orbit counts |F_{m,d,lambda}(p)| and the recursion
/// X_{m,d,lambda} = |F_{m,d,lambda}| - sum_{k=1}^{d_l} X_{m,(d_1..d_{l-1},k,d_l-k),lambda},
/// with X = |F| when d_l = 0. Memoized; thread-safe.
class Census {
public:
    explicit Census(Engine e = Engine::Typed) : engine_(e) {}

    Engine engine() const { return engine_; }

    BigInt orbit_count(int m, const std::vector<int>& d, const Partition& lambda, std::uint64_t p) {
        const Key k{m, d, lambda, p};
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (auto it = f_.find(k); it != f_.end()) return it->second;
        }
        const ExtensionSpace X(m, d, lambda, p);
        const BigInt v = engine_ == Engine::Typed ? orbit_count_typed(X) : orbit_count_naive(X);
        std::lock_guard<std::mutex> lock(mu_);
        f_.emplace(k, v);
        return v;
    }

    BigInt x_count(int m, const std::vector<int>& d, const Partition& lambda, std::uint64_t p) {
        const Key k{m, d, lambda, p};
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (auto it = x_.find(k); it != x_.end()) return it->second;
        }
        ExtensionSpace(m, d, lambda, p);  // validates the shape
        BigInt v = orbit_count(m, d, lambda, p);
        if (d.back() != 0) {
            for (int kk = 1; kk <= d.back(); ++kk) {
                std::vector<int> e(d.begin(), d.end() - 1);
                e.push_back(kk);
                e.push_back(d.back() - kk);
                v -= x_count(m, e, lambda, p);
            }
        }
        if (v < 0) throw InternalInconsistency("negative X count at " + ExtensionSpace(m, d, lambda, p).str());
        std::lock_guard<std::mutex> lock(mu_);
        x_.emplace(k, v);
        return v;
    }

    struct Row {
        int n = 0;
        std::uint64_t p = 0;
        BigInt count;
        std::vector<std::tuple<int, Partition, BigInt>> breakdown;  // (m, lambda, X_{m,(m),lambda})
    };

    /// Number of Lie rings of order p^n with pL + [L, L] ⊆ Z(L): the sum over m + |lambda| = n
    /// of X_{m,(m),lambda}(p), where B = Z(E) has type lambda and E / Z(E) has rank m.
    Row census(int n, std::uint64_t p) {
        if (n < 0) throw DomainError("census needs n >= 0");
        if (!is_prime(p)) throw DomainError("census needs a prime p");
        Row row{n, p, 0, {}};
        for (int m = 0; m <= n; ++m)
            for (const auto& lambda : partitions_of(n - m)) {
                const BigInt x = x_count(m, {m}, lambda, p);
                row.breakdown.emplace_back(m, lambda, x);
                row.count += x;
            }
        return row;
    }

private:
    using Key = std::tuple<int, std::vector<int>, Partition, std::uint64_t>;
    Engine engine_;
    std::mutex mu_;
    std::map<Key, BigInt> f_, x_;
};

/// The Lie ring E of a datum with a single-step flag (d = (m)): generators e~_i and the basis
/// b_a of B, relations p e~_i = lift of z(e_i) (least nonnegative coordinates) and
/// p^{lambda_a} b_a = 0, brackets [e~_i, e~_j] = y(e_i ∧ e_j) in B[p], B central.
inline LieRing materialize(int m, const Partition& lambda, std::uint64_t p, const ExtensionDatum& x) {
    const ExtensionSpace X(m, {m}, lambda, p);
    if (x.y.rows != X.s || x.y.cols != X.pairs || x.z.rows != X.s || x.z.cols != X.m) throw DomainError("materialize: datum has the wrong shape");
    const int g = m + X.s;
    std::vector<std::vector<std::int64_t>> rels;
    for (int i = 0; i < m; ++i) {
        std::vector<std::int64_t> r(static_cast<std::size_t>(g), 0);
        r[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(p);
        for (int a = 0; a < X.s; ++a) r[static_cast<std::size_t>(m + a)] = -static_cast<std::int64_t>(x.z.at(a, i));
        rels.push_back(r);
    }
    for (int a = 0; a < X.s; ++a) {
        std::vector<std::int64_t> r(static_cast<std::size_t>(g), 0);
        r[static_cast<std::size_t>(m + a)] = static_cast<std::int64_t>(pow_u64(p, static_cast<unsigned>(lambda.parts[static_cast<std::size_t>(a)])));
        rels.push_back(r);
    }
    std::vector<std::vector<std::vector<std::int64_t>>> br(static_cast<std::size_t>(g),
                                                           std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(g), std::vector<std::int64_t>(static_cast<std::size_t>(g), 0)));
    int col = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j, ++col)
            for (int a = 0; a < X.s; ++a) {
                const auto c = static_cast<std::int64_t>(x.y.at(a, col)) *
                               static_cast<std::int64_t>(pow_u64(p, static_cast<unsigned>(lambda.parts[static_cast<std::size_t>(a)] - 1)));
                br[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(m + a)] = c;
                br[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(m + a)] = -c;
            }
    const LieRing E = lie_ring_from_relations(p, g, rels, br, lambda.largest() + 2);
    if (E.n() != m + lambda.weight()) throw InternalInconsistency("materialized ring has the wrong order");
    if (!is_central_frattini_lie(E)) throw InternalInconsistency("materialized ring violates pE + [E, E] ⊆ Z(E)");
    return E;
}

/// All data of a space (for exhaustive checks at tiny sizes).
inline void for_each_datum(const ExtensionSpace& X, const std::function<void(const ExtensionDatum&)>& visit) {
    const BigInt total = big_pow(BigInt(X.p), static_cast<unsigned>(X.D));
    if (total > limits().module_size) throw Refusal("extension space " + X.str() + " exceeds the module-size cap", total);
    std::vector<Field::Elem> c(static_cast<std::size_t>(X.D), 0);
    for (;;) {
        visit(ExtensionDatum::from_coords(X, c));
        std::size_t k = 0;
        while (k < c.size() && ++c[k] == X.p) c[k++] = 0;
        if (k == c.size()) break;
    }
}

}  // namespace porc
