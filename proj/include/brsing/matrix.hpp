#pragma once

#include <vector>

#include "poly.hpp"

namespace brsing {

/// Dense matrix of polynomials, row-major.
class PolyMatrix {
public:
    PolyMatrix(RingPtr ring, int rows, int cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols) {
        if (rows < 1 || cols < 1) throw DomainError("matrix dimensions must be positive");
        entries_.assign(static_cast<std::size_t>(rows) * cols, Poly(ring_));
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const RingPtr& ring() const { return ring_; }

    Poly& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Poly& at(int r, int c) const {
        return entries_[static_cast<std::size_t>(r) * cols_ + c];
    }

    std::vector<Poly> column(int c) const {
        std::vector<Poly> col;
        col.reserve(rows_);
        for (int r = 0; r < rows_; ++r) col.push_back(at(r, c));
        return col;
    }

private:
    RingPtr ring_;
    int rows_, cols_;
    std::vector<Poly> entries_;
};

/// p x n matrix of partial derivatives of the given functions.
inline PolyMatrix jacobian(const std::vector<Poly>& fs) {
    if (fs.empty()) throw DomainError("jacobian of empty sequence");
    const RingPtr& R = fs.front().ring();
    PolyMatrix J(R, static_cast<int>(fs.size()), R->nvars());
    for (int r = 0; r < J.rows(); ++r)
        for (int c = 0; c < J.cols(); ++c) J.at(r, c) = fs[r].derivative(c);
    return J;
}

namespace detail {

inline Poly det_rec(const PolyMatrix& M, const std::vector<int>& rows,
                    const std::vector<int>& cols) {
    const RingPtr& R = M.ring();
    std::size_t k = rows.size();
    if (k == 1) return M.at(rows[0], cols[0]);
    if (k == 2)
        return M.at(rows[0], cols[0]) * M.at(rows[1], cols[1]) -
               M.at(rows[0], cols[1]) * M.at(rows[1], cols[0]);
    // cofactor expansion along the first row
    Poly d(R);
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < k; ++j) {
        const Poly& a = M.at(rows[0], cols[j]);
        if (a.is_zero()) continue;
        std::vector<int> sub_cols;
        sub_cols.reserve(k - 1);
        for (std::size_t l = 0; l < k; ++l)
            if (l != j) sub_cols.push_back(cols[l]);
        Poly minor = det_rec(M, sub_rows, sub_cols);
        if (j % 2 == 0)
            d += a * minor;
        else
            d -= a * minor;
    }
    return d;
}

inline void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// All k-subsets of {0,...,n-1} in lexicographic order.
inline std::vector<std::vector<int>> index_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    detail::subsets_rec(n, k, 0, cur, out);
    return out;
}

inline Poly determinant(const PolyMatrix& M) {
    if (M.rows() != M.cols()) throw DomainError("determinant of non-square matrix");
    std::vector<int> idx(M.rows());
    for (int i = 0; i < M.rows(); ++i) idx[i] = i;
    return detail::det_rec(M, idx, idx);
}

/// All k x k minors, lexicographic in (row-set, column-set), both index
/// sets ascending, standard determinant sign.
inline std::vector<Poly> minors(const PolyMatrix& M, int k) {
    if (k < 1 || k > M.rows() || k > M.cols()) throw DomainError("minor order out of range");
    std::vector<Poly> out;
    for (const auto& rs : index_subsets(M.rows(), k))
        for (const auto& cs : index_subsets(M.cols(), k))
            out.push_back(detail::det_rec(M, rs, cs));
    return out;
}

/// Ideal generators for the p-minors of the Jacobian of (g_1,...,g_p):
/// the J(g_1,...,g_p) of Le-Greuel type formulas.
inline std::vector<Poly> jacobian_minors(const std::vector<Poly>& gs) {
    return minors(jacobian(gs), static_cast<int>(gs.size()));
}

}  // namespace brsing
