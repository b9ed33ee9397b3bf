#pragma once

#include "submodule.hpp"

namespace brsing {

enum class VarietyKind { general, wh_hypersurface, wh_icis, linear_subspace, origin, ambient };

inline const char* to_string(VarietyKind k) {
    switch (k) {
        case VarietyKind::general: return "general";
        case VarietyKind::wh_hypersurface: return "wh_hypersurface";
        case VarietyKind::wh_icis: return "wh_icis";
        case VarietyKind::linear_subspace: return "linear_subspace";
        case VarietyKind::origin: return "origin";
        case VarietyKind::ambient: return "ambient";
    }
    return "?";
}

/// X = h^{-1}(0) together with the claim about what kind of germ it is.
struct VarietySpec {
    RingPtr ring;
    std::vector<Poly> equations;
    std::optional<std::vector<long>> weights_claim;
    VarietyKind kind = VarietyKind::general;
    bool reduced_asserted = false;

    const std::vector<long> weights_or_ones() const {
        if (weights_claim) return *weights_claim;
        return std::vector<long>(ring->nvars(), 1);
    }
};

enum class DerlogRoute { syzygy, thm_wh_hypersurface, thm_wh_icis, builtin };

inline const char* to_string(DerlogRoute r) {
    switch (r) {
        case DerlogRoute::syzygy: return "syzygy";
        case DerlogRoute::thm_wh_hypersurface: return "wh_hypersurface";
        case DerlogRoute::thm_wh_icis: return "wh_icis";
        case DerlogRoute::builtin: return "builtin";
    }
    return "?";
}

/// Theta_X as a finitely generated submodule of O^n, with provenance.
struct DerlogModule {
    SubModule base;
    DerlogRoute provenance;
    VarietySpec variety;
};

inline Poly euler_field_entry(const RingPtr& R, int i, long w) {
    return Poly::variable(R, i, Rational(w));
}

inline VecPoly euler_field(const RingPtr& R, const std::vector<long>& w) {
    VecPoly v(R, R->nvars());
    for (int i = 0; i < R->nvars(); ++i) v[i] = euler_field_entry(R, i, w[i]);
    return v;
}

/// Squarefree test for a germ vanishing at 0: the singular locus
/// V(h, J(h)) must have codimension >= 2 (or be empty for a smooth germ).
inline bool is_squarefree_germ(const Poly& h) {
    if (h.is_zero()) return false;
    const RingPtr& R = h.ring();
    std::vector<Poly> gens = {h};
    for (int j = 0; j < R->nvars(); ++j) gens.push_back(h.derivative(j));
    SubModule I = SubModule::ideal(R, gens);
    if (I.contains(Poly(R, Rational(1)))) return true;  // smooth germ
    return krull_dim(I) <= R->nvars() - 2;
}

/// ICIS test: p <= n, dim V(g) = n - p, and <g> + p-minors of finite colength.
inline bool is_icis(const std::vector<Poly>& g) {
    if (g.empty()) return false;
    const RingPtr& R = g.front().ring();
    int n = R->nvars();
    int p = static_cast<int>(g.size());
    if (p > n) return false;
    for (const auto& gi : g)
        if (gi.is_zero() || gi.constant_term() != 0) return false;
    SubModule I = SubModule::ideal(R, g);
    if (I.contains(Poly(R, Rational(1)))) return false;
    if (krull_dim(I) != n - p) return false;
    return colength(I.plus(jacobian_minors(g))).finite;
}

/// Machine checks for the claimed variety kind.
inline void validate_variety(const VarietySpec& X) {
    const RingPtr& R = X.ring;
    int n = R->nvars();
    for (const auto& h : X.equations)
        if (!h.is_zero() && h.constant_term() != 0)
            throw HypothesisError("variety equation does not vanish at the origin");
    switch (X.kind) {
        case VarietyKind::ambient:
        case VarietyKind::origin:
            return;
        case VarietyKind::linear_subspace:
            for (const auto& h : X.equations) {
                bool is_var = h.term_count() == 1 && R->total_degree(h.leading_exponent()) == 1;
                if (!is_var)
                    throw HypothesisError("linear_subspace equations must be single variables");
            }
            return;
        case VarietyKind::general:
            if (X.equations.empty()) throw HypothesisError("variety needs equations");
            return;
        case VarietyKind::wh_hypersurface: {
            if (X.equations.size() != 1)
                throw HypothesisError("wh_hypersurface needs exactly one equation");
            if (n < 2) throw HypothesisError("wh_hypersurface requires n >= 2");
            const Poly& h = X.equations[0];
            if (h.is_zero()) throw HypothesisError("zero equation");
            auto w = X.weights_or_ones();
            if (!h.is_weighted_homogeneous(w))
                throw HypothesisError("equation is not weighted homogeneous for the given weights");
            std::vector<Poly> partials;
            for (int j = 0; j < n; ++j) partials.push_back(h.derivative(j));
            if (!colength(SubModule::ideal(R, partials)).finite)
                throw HypothesisError("equation does not have an isolated singularity");
            return;
        }
        case VarietyKind::wh_icis: {
            int p = static_cast<int>(X.equations.size());
            if (p < 1 || p > n - 1)
                throw HypothesisError("wh_icis needs 1 <= p <= n-1 equations");
            auto w = X.weights_or_ones();
            for (const auto& h : X.equations) {
                if (h.is_zero()) throw HypothesisError("zero equation");
                if (!h.is_weighted_homogeneous(w))
                    throw HypothesisError("equation is not weighted homogeneous");
            }
            if (!is_icis(X.equations))
                throw HypothesisError("equations do not define an ICIS");
            return;
        }
    }
}

/// delta(h_k) in <h_1,...,h_m> for every generator: the defining property.
inline bool tangency_holds(const DerlogModule& D) {
    if (D.variety.kind == VarietyKind::ambient) return true;
    std::vector<Poly> eqs = D.variety.equations;
    if (D.variety.kind == VarietyKind::origin) {
        eqs.clear();
        for (int j = 0; j < D.variety.ring->nvars(); ++j)
            eqs.push_back(Poly::variable(D.variety.ring, j));
    }
    SubModule I = SubModule::ideal(D.variety.ring, eqs);
    for (const auto& delta : D.base.generators())
        for (const auto& h : eqs)
            if (!I.contains(apply_vector_field(delta, h))) return false;
    return true;
}

/// General route: Theta_X = pi_n(syz(D_h)) for a reduced defining ideal.
inline DerlogModule derlog_syzygy(const VarietySpec& X) {
    const RingPtr& R = X.ring;
    int n = R->nvars();
    int m = static_cast<int>(X.equations.size());
    if (m == 0) throw HypothesisError("derlog_syzygy needs equations");
    for (const auto& h : X.equations)
        if (h.is_zero()) throw HypothesisError("derlog_syzygy: zero equation");

    if (!X.reduced_asserted) {
        if (m == 1) {
            if (!is_squarefree_germ(X.equations[0]))
                throw HypothesisError("equation is not reduced (not squarefree as a germ)");
        } else {
            // positive-dimensional ICIS ideals are reduced; otherwise the
            // caller must assert reducedness
            int p = m;
            bool ok = p <= n - 1 && is_icis(X.equations);
            if (!ok)
                throw HypothesisError(
                    "reducedness not established for a non-principal ideal; assert it explicitly");
        }
    }

    // the m x (n + m^2) matrix of Lemma-type syzygy computation:
    // columns are the gradients followed by h_k * e_i blocks
    PolyMatrix Dh = jacobian(X.equations);
    std::vector<VecPoly> cols;
    for (int j = 0; j < n; ++j) cols.push_back(VecPoly(Dh.column(j)));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            cols.push_back(VecPoly::unit(R, m, i, X.equations[k]));
    SubModule D(R, m, std::move(cols));
    SubModule syz = syzygies(D);

    std::vector<VecPoly> gens;
    for (const auto& v : syz.generators()) {
        VecPoly g(R, n);
        for (int j = 0; j < n; ++j) g[j] = v[j];
        if (g.is_zero()) continue;
        g.normalize_content();
        gens.push_back(std::move(g));
    }
    return DerlogModule{SubModule(R, n, std::move(gens)), DerlogRoute::syzygy, X};
}

/// Weighted homogeneous hypersurface with isolated singularity: theta_w
/// plus the hamiltonian fields theta_ij.
inline DerlogModule derlog_wh_hypersurface(const VarietySpec& X) {
    if (X.kind != VarietyKind::wh_hypersurface)
        throw HypothesisError("derlog_wh_hypersurface: wrong variety kind");
    validate_variety(X);
    const RingPtr& R = X.ring;
    int n = R->nvars();
    const Poly& h = X.equations[0];
    auto w = X.weights_or_ones();
    std::vector<VecPoly> gens;
    gens.push_back(euler_field(R, w));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            VecPoly t(R, n);
            t[i] = h.derivative(j);
            t[j] = -h.derivative(i);
            gens.push_back(std::move(t));
        }
    return DerlogModule{SubModule(R, n, std::move(gens)), DerlogRoute::thm_wh_hypersurface, X};
}

/// Weighted homogeneous ICIS: theta_w, the h_i e_j, and the cofactor
/// fields from the (p+1)-column subsets of the symbol-row matrix.
inline DerlogModule derlog_wh_icis(const VarietySpec& X) {
    if (X.kind != VarietyKind::wh_icis)
        throw HypothesisError("derlog_wh_icis: wrong variety kind");
    validate_variety(X);
    const RingPtr& R = X.ring;
    int n = R->nvars();
    int p = static_cast<int>(X.equations.size());
    auto w = X.weights_or_ones();
    std::vector<VecPoly> gens;
    gens.push_back(euler_field(R, w));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < n; ++j)
            gens.push_back(VecPoly::unit(R, n, j, X.equations[i]));
    PolyMatrix Dh = jacobian(X.equations);
    std::vector<int> all_rows(p);
    for (int r = 0; r < p; ++r) all_rows[r] = r;
    for (const auto& cols : index_subsets(n, p + 1)) {
        VecPoly delta(R, n);
        for (int t = 0; t <= p; ++t) {
            std::vector<int> sub_cols;
            for (int l = 0; l <= p; ++l)
                if (l != t) sub_cols.push_back(cols[l]);
            Poly minor = detail::det_rec(Dh, all_rows, sub_cols);
            delta[cols[t]] = (t % 2 == 0) ? minor : -minor;
        }
        if (!delta.is_zero()) gens.push_back(std::move(delta));
    }
    return DerlogModule{SubModule(R, n, std::move(gens)), DerlogRoute::thm_wh_icis, X};
}

/// Closed forms for the ambient space, the origin and coordinate subspaces.
inline DerlogModule derlog_builtin(const VarietySpec& X) {
    const RingPtr& R = X.ring;
    int n = R->nvars();
    std::vector<VecPoly> gens;
    switch (X.kind) {
        case VarietyKind::ambient:
            for (int j = 0; j < n; ++j)
                gens.push_back(VecPoly::unit(R, n, j, Poly(R, Rational(1))));
            break;
        case VarietyKind::origin:
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    gens.push_back(VecPoly::unit(R, n, k, Poly::variable(R, j)));
            break;
        case VarietyKind::linear_subspace: {
            validate_variety(X);
            std::vector<bool> normal(n, false);  // variables cut out by the subspace
            for (const auto& h : X.equations) {
                const Exponent& e = h.leading_exponent();
                for (int j = 0; j < n; ++j)
                    if (e[j] > 0) normal[j] = true;
            }
            for (int j = 0; j < n; ++j)
                if (!normal[j]) gens.push_back(VecPoly::unit(R, n, j, Poly(R, Rational(1))));
            for (int l = 0; l < n; ++l) {
                if (!normal[l]) continue;
                for (int k = 0; k < n; ++k)
                    if (normal[k]) gens.push_back(VecPoly::unit(R, n, k, Poly::variable(R, l)));
            }
            break;
        }
        default:
            throw HypothesisError("derlog_builtin: kind must be ambient, origin or linear_subspace");
    }
    return DerlogModule{SubModule(R, n, std::move(gens)), DerlogRoute::builtin, X};
}

/// Route dispatch on the variety kind.
inline DerlogModule derlog_of(const VarietySpec& X) {
    switch (X.kind) {
        case VarietyKind::ambient:
        case VarietyKind::origin:
        case VarietyKind::linear_subspace:
            return derlog_builtin(X);
        case VarietyKind::wh_hypersurface:
            return derlog_wh_hypersurface(X);
        case VarietyKind::wh_icis:
            return derlog_wh_icis(X);
        case VarietyKind::general:
            return derlog_syzygy(X);
    }
    throw HypothesisError("unknown variety kind");
}

struct FreeDivisorResult {
    bool free = false;
    Poly witness;  // determinant of the minimal generator matrix
};

/// Saito's criterion: n minimal generators whose determinant is a unit
/// multiple of h.
inline FreeDivisorResult is_free_divisor(const VarietySpec& X) {
    if (X.equations.size() != 1)
        throw HypothesisError("is_free_divisor expects a hypersurface");
    const RingPtr& R = X.ring;
    int n = R->nvars();
    const Poly& h = X.equations[0];
    DerlogModule D = X.kind == VarietyKind::general ? derlog_syzygy(X) : derlog_of(X);
    SubModule mg = minimal_generators(D.base);
    if (static_cast<int>(mg.generators().size()) != n) return {false, Poly(R)};
    PolyMatrix M(R, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) M.at(r, c) = mg.generators()[r][c];
    Poly d = determinant(M);
    if (d.is_zero()) return {false, Poly(R)};
    bool assoc = SubModule::ideal(R, {h}).contains(d) && SubModule::ideal(R, {d}).contains(h);
    return {assoc, d};
}

/// Re-derive the kind of a variety presented by bare equations (used for
/// pullbacks, where the claimed kind may degrade or improve).
struct DerivedVariety {
    VarietySpec spec;
    bool reduced_known = false;  // true when reducedness was machine-established
};

inline DerivedVariety derive_variety_kind(const RingPtr& R, std::vector<Poly> eqs) {
    int n = R->nvars();
    std::vector<Poly> nonzero;
    for (auto& h : eqs)
        if (!h.is_zero()) {
            h.normalize_content();
            nonzero.push_back(h);
        }
    VarietySpec X{R, nonzero, std::nullopt, VarietyKind::general, false};
    if (nonzero.empty()) {
        X.kind = VarietyKind::ambient;
        return {X, true};
    }
    SubModule I = SubModule::ideal(R, nonzero);
    if (krull_dim(I) == 0) {
        X.kind = VarietyKind::origin;
        return {X, true};  // the reduced ideal of {0} is the maximal ideal
    }
    std::vector<long> ones(n, 1);
    if (nonzero.size() == 1) {
        const Poly& h = nonzero[0];
        bool reduced = is_squarefree_germ(h);
        if (reduced && n >= 2 && h.is_weighted_homogeneous(ones)) {
            std::vector<Poly> partials;
            for (int j = 0; j < n; ++j) partials.push_back(h.derivative(j));
            if (colength(SubModule::ideal(R, partials)).finite) {
                X.kind = VarietyKind::wh_hypersurface;
                X.weights_claim = ones;
                return {X, true};
            }
        }
        return {X, reduced};
    }
    int p = static_cast<int>(nonzero.size());
    if (p <= n - 1 && is_icis(nonzero)) {
        bool all_hom = true;
        for (const auto& h : nonzero)
            if (!h.is_weighted_homogeneous(ones)) all_hom = false;
        if (all_hom) {
            X.kind = VarietyKind::wh_icis;
            X.weights_claim = ones;
        }
        return {X, true};  // positive-dimensional ICIS ideals are reduced
    }
    return {X, false};
}

}  // namespace brsing
