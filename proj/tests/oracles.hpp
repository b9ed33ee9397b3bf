#pragma once

// Independent oracles used only by the test suite: a Macaulay-matrix
// linear-algebra colength, lattice counting for monomial ideals, and a
// permutation-expansion determinant. None of them share code with the
// standard-basis engine.

#include <map>

#include "brsing/brsing.hpp"

namespace oracles {

using brsing::Exponent;
using brsing::Poly;
using brsing::Rational;
using brsing::RingPtr;

inline void enumerate_monomials(int n, long max_deg, std::vector<Exponent>& out) {
    Exponent e(n, 0);
    long deg = 0;
    while (true) {
        out.push_back(e);
        // next exponent with total degree <= max_deg, odometer with carry
        int j = 0;
        while (j < n) {
            ++e[j];
            ++deg;
            if (deg <= max_deg) break;
            deg -= e[j];
            e[j] = 0;
            ++j;
        }
        if (j == n) break;
    }
}

/// Rank of a dense rational matrix by exact Gaussian elimination.
inline std::size_t matrix_rank(std::vector<std::vector<Rational>> M) {
    std::size_t rank = 0;
    if (M.empty()) return 0;
    std::size_t rows = M.size(), cols = M[0].size();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && M[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(M[rank], M[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || M[r][c] == 0) continue;
            Rational factor = M[r][c] / M[rank][c];
            for (std::size_t k = c; k < cols; ++k) M[r][k] -= factor * M[rank][k];
        }
        ++rank;
    }
    return rank;
}

/// dim O_n/(I + m^d) by linear algebra: rows are the generators multiplied
/// by all monomials, truncated at degree < d, over the monomial basis.
inline long truncated_colength(const std::vector<Poly>& gens, long d) {
    const RingPtr& R = gens.front().ring();
    int n = R->nvars();
    std::vector<Exponent> basis;
    enumerate_monomials(n, d - 1, basis);
    std::map<Exponent, std::size_t> col_of;
    for (std::size_t k = 0; k < basis.size(); ++k) col_of[basis[k]] = k;

    std::vector<Exponent> mults;
    enumerate_monomials(n, d - 1, mults);

    std::vector<std::vector<Rational>> M;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (const auto& m : mults) {
            if (R->total_degree(m) + g.order() >= d) continue;
            Poly prod = g.times_term(Rational(1), m);
            std::vector<Rational> row(basis.size(), Rational(0));
            bool nonzero = false;
            for (const auto& [e, c] : prod.terms()) {
                if (R->total_degree(e) >= d) continue;  // lives in m^d
                row[col_of.at(e)] = c;
                nonzero = true;
            }
            if (nonzero) M.push_back(std::move(row));
        }
    }
    return static_cast<long>(basis.size() - matrix_rank(std::move(M)));
}

/// Colength by Macaulay matrices: increase the truncation degree until the
/// value stabilizes twice. Only meaningful for ideals of finite colength;
/// max_d caps the search.
inline std::optional<long> macaulay_colength(const std::vector<Poly>& gens, long max_d = 24) {
    std::optional<long> prev;
    int stable = 0;
    for (long d = 2; d <= max_d; ++d) {
        long v = truncated_colength(gens, d);
        if (prev && v == *prev) {
            if (++stable >= 2) return v;
        } else {
            stable = 0;
        }
        prev = v;
    }
    return std::nullopt;
}

/// Lattice counting for a monomial ideal: the number of exponents not
/// divisible by any generator exponent, by brute enumeration in the box
/// spanned by the pure-power bounds.
inline std::optional<long> lattice_colength(const std::vector<Exponent>& gens, int n) {
    std::vector<long> box(n, -1);
    for (const auto& e : gens) {
        int support = -1;
        bool pure = true;
        for (int j = 0; j < n; ++j) {
            if (e[j] == 0) continue;
            if (support >= 0) {
                pure = false;
                break;
            }
            support = j;
        }
        if (pure && support >= 0 && (box[support] < 0 || e[support] < box[support]))
            box[support] = e[support];
        if (pure && support < 0) return 0;  // the unit monomial
    }
    for (int j = 0; j < n; ++j)
        if (box[j] < 0) return std::nullopt;  // infinite
    long count = 0;
    Exponent e(n, 0);
    while (true) {
        bool standard = true;
        for (const auto& g : gens) {
            bool divides = true;
            for (int j = 0; j < n; ++j)
                if (g[j] > e[j]) {
                    divides = false;
                    break;
                }
            if (divides) {
                standard = false;
                break;
            }
        }
        if (standard) ++count;
        int j = 0;
        while (j < n && ++e[j] >= box[j]) e[j++] = 0;
        if (j == n) break;
    }
    return count;
}

/// Determinant by expansion over all permutations (Leibniz formula).
inline Poly permutation_determinant(const brsing::PolyMatrix& M) {
    int n = M.rows();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Poly det(M.ring());
    do {
        // sign by counting inversions
        int inv = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (perm[a] > perm[b]) ++inv;
        Poly term(M.ring(), Rational(inv % 2 == 0 ? 1 : -1));
        for (int r = 0; r < n; ++r) term *= M.at(r, perm[r]);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace oracles
