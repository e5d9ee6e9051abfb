#pragma once

// Dense matrices over F_q: elimination, inverses, characteristic polynomials and
// exhaustive enumeration of GL_n(q) and its block-upper-triangular parabolics.

#include "porc/field.hpp"

#include <functional>
#include <random>

namespace porc {

struct Mat {
    int rows = 0, cols = 0;
    std::vector<Field::Elem> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    Field::Elem& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    Field::Elem at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    bool operator==(const Mat&) const = default;
    auto operator<=>(const Mat&) const = default;
};

namespace mat {

inline Mat mul(const Field& F, const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw DomainError("matrix product: shape mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const auto v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) = F.add(r.at(i, j), F.mul(v, y.at(k, j)));
        }
    return r;
}

inline Mat add(const Field& F, const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DomainError("matrix sum: shape mismatch");
    Mat r(x.rows, x.cols);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.add(x.a[i], y.a[i]);
    return r;
}

inline Mat sub(const Field& F, const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DomainError("matrix difference: shape mismatch");
    Mat r(x.rows, x.cols);
    for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = F.sub(x.a[i], y.a[i]);
    return r;
}

inline Mat scale(const Field& F, Field::Elem c, const Mat& x) {
    Mat r = x;
    for (auto& v : r.a) v = F.mul(c, v);
    return r;
}

inline Mat transpose(const Mat& x) {
    Mat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

/// Row-reduces m in place; returns the rank.
inline int row_reduce(const Field& F, Mat& m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        const auto inv = F.inv(m.at(rank, col));
        for (int j = col; j < m.cols; ++j) m.at(rank, j) = F.mul(m.at(rank, j), inv);
        for (int i = 0; i < m.rows; ++i) {
            if (i == rank) continue;
            const auto f = m.at(i, col);
            if (f == 0) continue;
            for (int j = col; j < m.cols; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

inline int rank(const Field& F, Mat m) { return row_reduce(F, m); }

/// Dimension of {x : m x = 0}.
inline int kernel_dim(const Field& F, const Mat& m) { return m.cols - rank(F, m); }

inline Mat inverse(const Field& F, const Mat& m) {
    if (m.rows != m.cols) throw DomainError("inverse of a non-square matrix");
    const int n = m.rows;
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    row_reduce(F, aug);
    for (int i = 0; i < n; ++i)
        if (aug.at(i, i) != 1) throw DomainError("matrix is singular");
    Mat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
    return r;
}

inline bool invertible(const Field& F, const Mat& m) { return m.rows == m.cols && rank(F, m) == m.rows; }

inline Mat pow(const Field& F, const Mat& m, unsigned e) {
    Mat r = Mat::identity(m.rows);
    for (unsigned i = 0; i < e; ++i) r = mul(F, r, m);
    return r;
}

/// f(m) by Horner's rule.
inline Mat eval_poly(const Field& F, const UniPoly& f, const Mat& m) {
    const int n = m.rows;
    Mat r(n, n);
    for (int i = f.degree(); i >= 0; --i) {
        r = mul(F, r, m);
        const auto c = f.c[static_cast<std::size_t>(i)];
        for (int k = 0; k < n; ++k) r.at(k, k) = F.add(r.at(k, k), c);
    }
    return r;
}

/// det(X·I − m) by cofactor expansion over polynomial entries (small n only).
inline UniPoly char_poly(const Field& F, const Mat& m) {
    if (m.rows != m.cols) throw DomainError("characteristic polynomial of a non-square matrix");
    const int n = m.rows;
    if (n > 8) throw DomainError("characteristic polynomial: matrix too large");
    std::vector<UniPoly> e(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            UniPoly p = poly::constant(F.neg(m.at(i, j)));
            if (i == j) {
                p.c.resize(2, 0);
                p.c[1] = 1;
                poly::trim(p);
            }
            e[static_cast<std::size_t>(i) * n + j] = p;
        }
    // Expansion along rows with a column-usage mask.
    std::function<UniPoly(int, unsigned)> det = [&](int row, unsigned used) -> UniPoly {
        if (row == n) return poly::constant(1);
        UniPoly acc;
        int sign_pos = 0;
        for (int j = 0; j < n; ++j) {
            if (used & (1u << j)) continue;
            const auto& entry = e[static_cast<std::size_t>(row) * n + j];
            if (!entry.is_zero()) {
                UniPoly term = poly::mul(F, entry, det(row + 1, used | (1u << j)));
                acc = (sign_pos % 2 == 0) ? poly::add(F, acc, term) : poly::sub(F, acc, term);
            }
            ++sign_pos;
        }
        return acc;
    };
    return det(0, 0);
}

/// Companion matrix of a monic polynomial (acts on column vectors).
inline Mat companion(const Field& F, const UniPoly& f) {
    const int d = f.degree();
    Mat m(d, d);
    for (int i = 1; i < d; ++i) m.at(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) m.at(i, d - 1) = F.neg(f.c[static_cast<std::size_t>(i)]);
    return m;
}

/// Block-diagonal sum.
inline Mat direct_sum(const std::vector<Mat>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += b.rows;
    Mat r(n, n);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < b.cols; ++j) r.at(off + i, off + j) = b.at(i, j);
        off += b.rows;
    }
    return r;
}

inline Mat submatrix(const Mat& m, int r0, int c0, int nr, int nc) {
    Mat r(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) r.at(i, j) = m.at(r0 + i, c0 + j);
    return r;
}

inline Mat random(const Field& F, int r, int c, std::mt19937_64& rng) {
    Mat m(r, c);
    std::uniform_int_distribution<std::uint32_t> dist(0, F.q() - 1);
    for (auto& v : m.a) v = dist(rng);
    return m;
}

inline Mat random_invertible(const Field& F, int n, std::mt19937_64& rng) {
    for (;;) {
        Mat m = random(F, n, n, rng);
        if (invertible(F, m)) return m;
    }
}

}  // namespace mat

/// |GL_n(q)| = prod_{i<n} (q^n - q^i).
inline BigInt gl_order(int n, std::uint64_t q) {
    BigInt r = 1;
    const BigInt qn = big_pow(BigInt(q), static_cast<unsigned>(n));
    for (int i = 0; i < n; ++i) r *= qn - big_pow(BigInt(q), static_cast<unsigned>(i));
    return r;
}

/// Visits every element of GL_n(q) exactly once (rows chosen outside the span of the previous
/// ones). Refuses when |GL_n(q)| exceeds the group-size cap.
inline void gl_iter(int n, std::uint64_t q, const std::function<void(const Mat&)>& visit) {
    const BigInt order = gl_order(n, q);
    if (order > limits().group_size) throw Refusal("GL_" + std::to_string(n) + "(" + std::to_string(q) + ") exceeds the group-size cap", order);
    const Field& F = Field::get(q);
    if (n == 0) {
        visit(Mat(0, 0));
        return;
    }
    const std::uint64_t nvec = pow_u64(q, static_cast<unsigned>(n));
    Mat m(n, n);
    // Reduced echelon basis of the rows chosen so far, used for span membership.
    std::function<void(int, const Mat&)> rec = [&](int row, const Mat& echelon) {
        if (row == n) {
            visit(m);
            return;
        }
        for (std::uint64_t code = 0; code < nvec; ++code) {
            std::uint64_t c = code;
            for (int j = 0; j < n; ++j) {
                m.at(row, j) = static_cast<Field::Elem>(c % q);
                c /= q;
            }
            Mat ext(row + 1, n);
            for (int i = 0; i < row; ++i)
                for (int j = 0; j < n; ++j) ext.at(i, j) = echelon.at(i, j);
            for (int j = 0; j < n; ++j) ext.at(row, j) = m.at(row, j);
            if (mat::row_reduce(F, ext) == row + 1) rec(row + 1, ext);
        }
    };
    rec(0, Mat(0, n));
}

inline std::vector<Mat> gl_list(int n, std::uint64_t q) {
    std::vector<Mat> out;
    gl_iter(n, q, [&](const Mat& m) { out.push_back(m); });
    return out;
}

/// Order of the stabiliser of the standard flag with block sizes dims.
inline BigInt parabolic_order(const std::vector<int>& dims, std::uint64_t q) {
    BigInt r = 1;
    unsigned off = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        r *= gl_order(dims[i], q);
        for (std::size_t j = i + 1; j < dims.size(); ++j) off += static_cast<unsigned>(dims[i] * dims[j]);
    }
    return r * big_pow(BigInt(q), off);
}

/// Visits the block-upper-triangular matrices with invertible diagonal blocks of sizes dims:
/// the stabiliser of the flag U_i = span(e_1, ..., e_{dims_1+...+dims_i}).
inline void parabolic_iter(const std::vector<int>& dims, std::uint64_t q, const std::function<void(const Mat&)>& visit) {
    const BigInt order = parabolic_order(dims, q);
    if (order > limits().group_size) throw Refusal("parabolic subgroup exceeds the group-size cap", order);
    int n = 0;
    std::vector<int> start;
    for (int d : dims) {
        start.push_back(n);
        n += d;
    }
    std::vector<std::vector<Mat>> diag;
    for (int d : dims) diag.push_back(gl_list(d, q));
    std::vector<std::pair<int, int>> free_cells;
    for (std::size_t b = 0; b < dims.size(); ++b)
        for (int i = start[b]; i < start[b] + dims[b]; ++i)
            for (int j = start[b] + dims[b]; j < n; ++j) free_cells.emplace_back(i, j);
    const std::uint64_t nfree = pow_u64(q, static_cast<unsigned>(free_cells.size()));
    Mat m(n, n);
    std::function<void(std::size_t)> rec = [&](std::size_t b) {
        if (b == dims.size()) {
            for (std::uint64_t code = 0; code < nfree; ++code) {
                std::uint64_t c = code;
                for (auto [i, j] : free_cells) {
                    m.at(i, j) = static_cast<Field::Elem>(c % q);
                    c /= q;
                }
                visit(m);
            }
            return;
        }
        for (const auto& g : diag[b]) {
            for (int i = 0; i < dims[b]; ++i)
                for (int j = 0; j < dims[b]; ++j) m.at(start[b] + i, start[b] + j) = g.at(i, j);
            rec(b + 1);
        }
    };
    rec(0);
}

/// Gaussian binomial [n choose k]_q.
inline BigInt gaussian_binomial(int n, int k, std::uint64_t q) {
    if (k < 0 || k > n) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= big_pow(BigInt(q), static_cast<unsigned>(n - i)) - 1;
        den *= big_pow(BigInt(q), static_cast<unsigned>(i + 1)) - 1;
    }
    return exact_div(num, den, "gaussian_binomial");
}

/// Number of flags of shape dims in F_q^{sum dims} (a q-multinomial coefficient).
inline BigInt flag_count(const std::vector<int>& dims, std::uint64_t q) {
    BigInt r = 1;
    int total = 0;
    for (int d : dims) {
        total += d;
        r *= gaussian_binomial(total, d, q);
    }
    return r;
}

}  // namespace porc
