#pragma once

#include "sections.hpp"

namespace brsing {

/// Constant n x i matrix of partial derivatives of p, over the target ring.
inline PolyMatrix section_jacobian(const LinearSection& p) {
    PolyMatrix Dp(p.target, p.n, p.i);
    for (int r = 0; r < p.i; ++r) Dp.at(r, r) = Poly(p.target, Rational(1));
    for (int r = 0; r < p.n - p.i; ++r)
        for (int c = 0; c < p.i; ++c) Dp.at(p.i + r, c) = Poly(p.target, p.coeffs[r][c]);
    return Dp;
}

/// p*(Theta_X): the O_i-module generated by the generators of Theta_X
/// composed with p.
inline SubModule pullback_module(const DerlogModule& D, const LinearSection& p) {
    std::vector<VecPoly> gens;
    for (const auto& eta : D.base.generators()) {
        VecPoly v(p.target, p.n);
        for (int k = 0; k < p.n; ++k) v[k] = eta[k].substitute(p.target, p.images);
        if (!v.is_zero()) {
            v.normalize_content();
            gens.push_back(std::move(v));
        }
    }
    return SubModule(p.target, p.n, std::move(gens));
}

/// Low_X(p) = { g in O_i^i : Dp * g in p*(Theta_X) }. Since the top block
/// of Dp is the identity, this is exactly pi_i(p*(Theta_X) cap J(p)).
inline SubModule low_module(const DerlogModule& D, const LinearSection& p) {
    return module_preimage(section_jacobian(p), pullback_module(D, p));
}

/// Lif_X(p) membership: p(pi_i(eta o p)) = eta o p, checked exactly.
inline bool is_liftable(const VecPoly& eta, const LinearSection& p) {
    if (eta.rank() != p.n) throw DomainError("is_liftable: field rank mismatch");
    VecPoly v(p.target, p.n);
    for (int k = 0; k < p.n; ++k) v[k] = eta[k].substitute(p.target, p.images);
    std::vector<Poly> head(v.entries().begin(), v.entries().begin() + p.i);
    VecPoly pw(p.target, p.n);
    for (int k = 0; k < p.i; ++k) pw[k] = head[k];
    for (int r = 0; r < p.n - p.i; ++r) {
        Poly l(p.target);
        for (int c = 0; c < p.i; ++c)
            if (p.coeffs[r][c] != 0) l += p.coeffs[r][c] * head[c];
        pw[p.i + r] = std::move(l);
    }
    return pw == v;
}

/// Algebraic transversality off 0: the n-minors of [Dp | eta o p] generate
/// an ideal of finite colength in O_i.
inline bool alg_transverse(const DerlogModule& D, const LinearSection& p) {
    SubModule pm = pullback_module(D, p);
    int cols = p.i + static_cast<int>(pm.generators().size());
    if (cols < p.n) return false;
    PolyMatrix M(p.target, p.n, cols);
    PolyMatrix Dp = section_jacobian(p);
    for (int r = 0; r < p.n; ++r)
        for (int c = 0; c < p.i; ++c) M.at(r, c) = Dp.at(r, c);
    for (int g = 0; g < static_cast<int>(pm.generators().size()); ++g)
        for (int r = 0; r < p.n; ++r) M.at(r, p.i + g) = pm.generators()[g][r];
    return colength(SubModule::ideal(p.target, minors(M, p.n))).finite;
}

enum class LowRelation { equal, strict_subset, violates };

inline const char* to_string(LowRelation r) {
    switch (r) {
        case LowRelation::equal: return "equal";
        case LowRelation::strict_subset: return "strict_subset";
        case LowRelation::violates: return "violates";
    }
    return "?";
}

struct LowLiftReport {
    SubModule low;
    SubModule theta_pre;  // Theta of the pullback variety
    LowRelation relation = LowRelation::violates;
    std::optional<long> damon_k;  // minimal k with m_i^k * theta_pre in low
    bool transverse_off_0 = false;
    bool pullback_certified = true;  // reduced structure of p^{-1}(X) was established
    VarietyKind pullback_kind = VarietyKind::general;
};

/// m^k * N subset M, tested on the finite generating set
/// { x^a g : |a| = k, g generator of N }.
inline bool mk_inclusion(const SubModule& N, const SubModule& M, long k) {
    const RingPtr& R = N.ring();
    int n = R->nvars();
    // enumerate exponents of total degree k by an odometer over degree
    // compositions
    std::vector<Exponent> exps;
    Exponent e(n, 0);
    e[0] = static_cast<int>(k);
    while (true) {
        exps.push_back(e);
        // next composition of k into n parts, colex
        int j = 0;
        while (j < n - 1 && e[j] == 0) ++j;
        if (j == n - 1) break;
        long head = e[j];
        e[j] = 0;
        e[j + 1] += 1;
        e[0] = static_cast<int>(head - 1);
    }
    for (const auto& a : exps)
        for (const auto& g : N.generators())
            if (!M.contains(g.times_term(Rational(1), a))) return false;
    return true;
}

/// Damon's inclusions m_i^k Theta_{p^{-1}(X)} subset Low_X(p) subset
/// Theta_{p^{-1}(X)}, with the minimal such k.
inline LowLiftReport damon_inclusions(const VarietySpec& X, const DerlogModule& D,
                                      const LinearSection& p) {
    DerivedVariety dv = pullback_variety(X, p);
    LowLiftReport rep{low_module(D, p),
                      SubModule::zero(p.target, p.i),
                      LowRelation::violates,
                      std::nullopt,
                      false,
                      dv.reduced_known || dv.spec.kind != VarietyKind::general,
                      dv.spec.kind};
    rep.transverse_off_0 = alg_transverse(D, p);
    if (!rep.pullback_certified) return rep;  // Low is still reported

    rep.theta_pre = derlog_of(dv.spec).base;
    ModuleRelation rel = module_equal(rep.low, rep.theta_pre);
    if (rel == ModuleRelation::equal)
        rep.relation = LowRelation::equal;
    else if (rel == ModuleRelation::first_in_second)
        rep.relation = LowRelation::strict_subset;
    else
        rep.relation = LowRelation::violates;

    if (rep.relation != LowRelation::violates) {
        long proxy = 16;
        ColengthResult quot = colength(rep.low);
        if (quot.finite) proxy = 2 * (quot.value + 1);
        for (long k = 0; k <= proxy; ++k) {
            if (mk_inclusion(rep.theta_pre, rep.low, k)) {
                rep.damon_k = k;
                break;
            }
        }
        if (!rep.damon_k && rep.transverse_off_0)
            throw ResourceCapError("damon_inclusions: k search cap exceeded");
    }
    return rep;
}

struct ProbeRow {
    std::size_t variety_index;
    int section_index;
    std::optional<LowRelation> relation;  // nullopt when the instance was skipped
    std::string note;
};

/// Probe of the equality Low_X(p) = Theta_{p^{-1}(X)} over a corpus of
/// homogeneous varieties; a strict finding is recorded, never suppressed.
inline std::vector<ProbeRow> conjecture_probe(const std::vector<VarietySpec>& corpus,
                                              int sections_per_variety,
                                              const SamplingConfig& cfg) {
    std::vector<ProbeRow> table;
    for (std::size_t xi = 0; xi < corpus.size(); ++xi) {
        const VarietySpec& X = corpus[xi];
        std::vector<long> ones(X.ring->nvars(), 1);
        for (const auto& h : X.equations)
            if (!h.is_weighted_homogeneous(ones))
                throw HypothesisError("conjecture_probe: corpus must be homogeneous");
        DerlogModule D = derlog_of(X);
        int n = X.ring->nvars();
        for (int s = 0; s < sections_per_variety; ++s) {
            auto rng = detail::sample_rng(cfg.seed, 500 + static_cast<std::uint64_t>(xi),
                                          static_cast<std::uint64_t>(s));
            LinearSection p = random_section(X.ring, std::max(1, n - 1), rng, cfg.height);
            ProbeRow row{xi, s, std::nullopt, ""};
            try {
                LowLiftReport rep = damon_inclusions(X, D, p);
                if (rep.pullback_certified)
                    row.relation = rep.relation;
                else
                    row.note = "pullback not certified reduced";
            } catch (const ResourceCapError& e) {
                row.note = e.what();
            } catch (const HypothesisError& e) {
                row.note = e.what();
            }
            table.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace brsing
