#pragma once

#include "invariants.hpp"

namespace brsing {

/// Linear section p: (C^i,0) -> (C^n,0), p(x) = (x_1,...,x_i, l_{i+1},...,l_n)
/// with l_{i+r} = sum_c coeffs[r][c] * x_c. pi_i o p = id by construction.
struct LinearSection {
    RingPtr source;  // n variables
    RingPtr target;  // first i variable names of the source
    int i = 0, n = 0;
    std::vector<std::vector<Rational>> coeffs;  // (n-i) x i
    std::vector<Poly> images;                   // the n components of p, in the target ring

    static LinearSection make(const RingPtr& source, int i,
                              std::vector<std::vector<Rational>> coeffs) {
        int n = source->nvars();
        if (i < 1 || i > n) throw DomainError("section dimension out of range");
        if (static_cast<int>(coeffs.size()) != n - i)
            throw DomainError("section coefficient row count mismatch");
        for (const auto& row : coeffs)
            if (static_cast<int>(row.size()) != i)
                throw DomainError("section coefficient column count mismatch");
        LinearSection p;
        p.source = source;
        p.i = i;
        p.n = n;
        p.coeffs = std::move(coeffs);
        if (i == n) {
            p.target = source;
        } else {
            std::vector<std::string> vars(source->vars().begin(), source->vars().begin() + i);
            p.target = make_ring(std::move(vars), std::nullopt, source->limits());
        }
        for (int j = 0; j < i; ++j) p.images.push_back(Poly::variable(p.target, j));
        for (int r = 0; r < n - i; ++r) {
            Poly l(p.target);
            for (int c = 0; c < i; ++c)
                if (p.coeffs[r][c] != 0) l += Poly::variable(p.target, c, p.coeffs[r][c]);
            p.images.push_back(std::move(l));
        }
        return p;
    }

    static LinearSection identity(const RingPtr& source) {
        return make(source, source->nvars(), {});
    }
};

namespace detail {

/// Gauss-Jordan inverse of a square rational matrix; nullopt when singular.
inline std::optional<std::vector<std::vector<Rational>>> rational_inverse(
    std::vector<std::vector<Rational>> A) {
    int n = static_cast<int>(A.size());
    std::vector<std::vector<Rational>> B(n, std::vector<Rational>(n, Rational(0)));
    for (int r = 0; r < n; ++r) B[r][r] = 1;
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (A[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(A[c], A[pivot]);
        std::swap(B[c], B[pivot]);
        Rational inv = 1 / A[c][c];
        for (int k = 0; k < n; ++k) {
            A[c][k] *= inv;
            B[c][k] *= inv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            Rational m = A[r][c];
            for (int k = 0; k < n; ++k) {
                A[r][k] -= m * A[c][k];
                B[r][k] -= m * B[c][k];
            }
        }
    }
    return B;
}

}  // namespace detail

inline LinearSection random_section(const RingPtr& source, int i, std::mt19937_64& rng,
                                    long height) {
    int n = source->nvars();
    std::vector<std::vector<Rational>> coeffs(n - i, std::vector<Rational>(i));
    for (auto& row : coeffs)
        for (auto& c : row) c = detail::random_coeff(rng, height);
    return LinearSection::make(source, i, std::move(coeffs));
}

inline Poly pullback(const Poly& f, const LinearSection& p) {
    if (f.ring()->nvars() != p.n) throw DomainError("pullback: ambient dimension mismatch");
    return f.substitute(p.target, p.images);
}

/// Equations composed with p; the kind of the pullback variety is
/// re-derived from scratch (it may degrade or improve).
inline DerivedVariety pullback_variety(const VarietySpec& X, const LinearSection& p) {
    if (X.kind == VarietyKind::ambient) {
        VarietySpec A{p.target, {}, std::nullopt, VarietyKind::ambient, true};
        return {A, true};
    }
    std::vector<Poly> eqs;
    for (const auto& h : X.equations) eqs.push_back(pullback(h, p));
    return derive_variety_kind(p.target, std::move(eqs));
}

struct SampledValue {
    ColengthResult value;
    bool stable = true;       // all usable samples agreed
    int finite_samples = 0;
};

struct MuStar {
    std::vector<long> values;  // (mu^(n), ..., mu^(1), mu^(0)=1)
    bool stable = true;
};

/// The classical mu* sequence: minima of Milnor numbers of restrictions to
/// sampled generic linear subspaces of each dimension.
inline MuStar mu_star(const Poly& f, const SamplingConfig& cfg) {
    const RingPtr& R = f.ring();
    int n = R->nvars();
    ColengthResult top = milnor(f);
    if (!top.finite) throw HypothesisError("mu_star: mu(f) must be finite");
    MuStar out;
    out.values.push_back(top.value);
    for (int i = n - 1; i >= 1; --i) {
        std::optional<long> best;
        bool all_equal = true;
        int finite = 0;
        for (int s = 0; s < cfg.samples; ++s) {
            auto rng = detail::sample_rng(cfg.seed, 100 + static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(s));
            LinearSection p = random_section(R, i, rng, cfg.height);
            ColengthResult m = milnor(pullback(f, p));
            if (!m.finite) continue;
            ++finite;
            if (best && *best != m.value) all_equal = false;
            if (!best || m.value < *best) best = m.value;
        }
        if (!best) throw HypothesisError("mu_star: every sampled section was degenerate");
        if (!all_equal || finite < cfg.samples) out.stable = false;
        out.values.push_back(*best);
    }
    out.values.push_back(1);  // mu^(0)
    return out;
}

struct MuStarIcis {
    std::vector<long> values;  // (mu^(n-p+1), ..., mu^(0)=1)
    bool stable = true;
    bool monotone = true;  // non-increasing, as the theory asserts
};

/// mu* of an ICIS: mu^(i)(g) is the Milnor number of (g, l_1,...,l_{n-p+1-i})
/// for generic linear forms, minimized over samples.
inline MuStarIcis mu_star_icis(const std::vector<Poly>& g, const SamplingConfig& cfg) {
    const RingPtr& R = g.front().ring();
    int n = R->nvars();
    int p = static_cast<int>(g.size());
    if (!is_icis(g)) throw HypothesisError("mu_star_icis: input is not an ICIS");
    MuStarIcis out;
    for (int i = n - p + 1; i >= 1; --i) {
        int extra = n - p + 1 - i;
        std::optional<long> best;
        bool all_equal = true;
        int usable = 0;
        int rounds = extra == 0 ? 1 : cfg.samples;
        for (int s = 0; s < rounds; ++s) {
            auto rng = detail::sample_rng(cfg.seed, 150 + static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(s));
            std::vector<Poly> gs = g;
            for (int t = 0; t < extra; ++t) {
                Poly l(R);
                for (int j = 0; j < n; ++j) {
                    Rational c = detail::random_coeff(rng, cfg.height);
                    if (c != 0) l += Poly::variable(R, j, c);
                }
                if (l.is_zero()) l = Poly::variable(R, 0);
                gs.push_back(std::move(l));
            }
            long v;
            try {
                v = milnor_icis(gs, cfg).value;
            } catch (const HypothesisError&) {
                continue;  // degenerate choice of linear forms
            }
            ++usable;
            if (best && *best != v) all_equal = false;
            if (!best || v < *best) best = v;
        }
        if (!best) throw HypothesisError("mu_star_icis: every sampled slice was degenerate");
        if (!all_equal || usable < rounds) out.stable = false;
        out.values.push_back(*best);
    }
    out.values.push_back(1);  // mu^(0)
    for (std::size_t k = 1; k < out.values.size(); ++k)
        if (out.values[k] > out.values[k - 1]) out.monotone = false;
    return out;
}

struct MuXiResult {
    ColengthResult value;  // infinite when no sampled section gives a finite value
    std::optional<LinearSection> witness;
    bool stable = true;
    int finite_samples = 0;
};

/// mu_X^(i)(f) = min over sections p in L_{i,n} of mu_{p^{-1}(X)}(f o p).
/// Sections whose pullback variety has no machine-certified reduced
/// structure are discarded and resampled (up to 3x the sample budget).
inline MuXiResult mu_X_i(const Poly& f, const VarietySpec& X, int i, const SamplingConfig& cfg) {
    const RingPtr& R = f.ring();
    int n = R->nvars();
    if (i < 1 || i > n) throw DomainError("mu_X_i: level out of range");
    MuXiResult out;
    if (i == n) {
        out.value = mu_X(f, derlog_of(X)).value;
        out.witness = LinearSection::identity(R);
        out.finite_samples = out.value.finite ? 1 : 0;
        return out;
    }
    std::optional<long> best;
    bool all_equal = true;
    int usable = 0;
    int attempts = 0;
    const int max_attempts = 3 * cfg.samples;
    std::uint64_t draw = 0;
    while (usable < cfg.samples && attempts < max_attempts) {
        ++attempts;
        auto rng = detail::sample_rng(cfg.seed, 200 + static_cast<std::uint64_t>(i), draw++);
        LinearSection p = random_section(R, i, rng, cfg.height);
        DerivedVariety dv = pullback_variety(X, p);
        if (dv.spec.kind == VarietyKind::general && !dv.reduced_known)
            continue;  // cannot certify the pullback; resample
        ColengthResult m;
        try {
            m = mu_X(pullback(f, p), derlog_of(dv.spec)).value;
        } catch (const HypothesisError&) {
            continue;
        }
        ++usable;  // infinite is a legal sampled value, not a discard
        if (!m.finite) continue;
        ++out.finite_samples;
        if (best && *best != m.value) all_equal = false;
        if (!best || m.value < *best) {
            best = m.value;
            out.witness = p;
        }
    }
    if (usable == 0)
        throw HypothesisError("mu_X_i: no sampled section admitted a certified pullback");
    if (!best) {
        out.value = ColengthResult::infinite();
        return out;
    }
    out.value = ColengthResult::of(*best);
    out.stable = all_equal && out.finite_samples == usable;
    return out;
}

/// The mixed sequence (mu_X^(n), ..., mu_X^(1)). Not monotone in general.
inline std::vector<MuXiResult> mu_X_star(const Poly& f, const VarietySpec& X,
                                         const SamplingConfig& cfg) {
    std::vector<MuXiResult> out;
    for (int i = f.ring()->nvars(); i >= 1; --i) out.push_back(mu_X_i(f, X, i, cfg));
    return out;
}

/// Bruce-Roberts number of f with respect to a generic linear subspace
/// H of dimension i of C^n: J_H(f') for the coordinate subspace spanned by
/// the first i variables, minimized over random linear changes f' of f.
inline SampledValue mu_H_br(const Poly& f, int i, const SamplingConfig& cfg) {
    const RingPtr& R = f.ring();
    int n = R->nvars();
    if (i < 0 || i > n) throw DomainError("mu_H_br: dimension out of range");
    if (i == n) {
        ColengthResult m = milnor(f);
        return {m, true, m.finite ? 1 : 0};
    }
    auto jh_colength = [&](const Poly& g) {
        std::vector<Poly> gens;
        for (int j = 0; j < i; ++j) gens.push_back(g.derivative(j));
        for (int j = i; j < n; ++j)
            for (int k = i; k < n; ++k) gens.push_back(Poly::variable(R, k) * g.derivative(j));
        return colength(SubModule::ideal(R, gens));
    };
    if (i == 0) {
        // H = {0}: J_H(f) = m_n * J(f), coordinate-independent
        ColengthResult m = jh_colength(f);
        return {m, true, m.finite ? 1 : 0};
    }
    std::optional<long> best;
    bool all_equal = true;
    int finite = 0;
    std::vector<Poly> df;
    for (int m = 0; m < n; ++m) df.push_back(f.derivative(m));
    for (int s = 0; s < cfg.samples; ++s) {
        auto rng = detail::sample_rng(cfg.seed, 300 + static_cast<std::uint64_t>(i),
                                      static_cast<std::uint64_t>(s));
        // Random invertible linear change of coordinates A, handled through
        // the inverse automorphism: for g = f(Ax), the ideal J_H(g) has the
        // same colength as its image under x -> A^{-1}x, generated by the
        // directional derivatives D_j f = sum_m A_{mj} df/dx_m and the
        // linear forms l_k = (A^{-1}x)_k. These stay as sparse as f itself,
        // where g and its partials are dense.
        std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) A[r][c] = detail::random_coeff(rng, cfg.height);
        auto B = detail::rational_inverse(A);
        if (!B) continue;
        std::vector<Poly> D(n, Poly(R));
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m)
                if (A[m][j] != 0) D[j] += A[m][j] * df[m];
        std::vector<Poly> gens;
        for (int j = 0; j < i; ++j) gens.push_back(D[j]);
        for (int k = i; k < n; ++k) {
            Poly l(R);
            for (int c = 0; c < n; ++c)
                if ((*B)[k][c] != 0) l += Poly::variable(R, c, (*B)[k][c]);
            for (int j = i; j < n; ++j) gens.push_back(l * D[j]);
        }
        for (auto& g : gens) g.normalize_content();
        ColengthResult m = colength(SubModule::ideal(R, gens));
        if (!m.finite) continue;
        ++finite;
        if (best && *best != m.value) all_equal = false;
        if (!best || m.value < *best) best = m.value;
    }
    if (!best) return {ColengthResult::infinite(), false, 0};
    return {ColengthResult::of(*best), all_equal && finite == cfg.samples, finite};
}

/// mu_{H^(i)}(f|_{H^(i+1)}): restrict f to a sampled generic (i+1)-plane,
/// then take the generic i-dimensional Bruce-Roberts number downstairs.
inline SampledValue mu_H_restricted(const Poly& f, int i, const SamplingConfig& cfg) {
    const RingPtr& R = f.ring();
    int n = R->nvars();
    if (i < 0 || i + 1 > n) throw DomainError("mu_H_restricted: dimension out of range");
    if (i + 1 == n) return mu_H_br(f, i, cfg);
    std::optional<long> best;
    bool all_equal = true;
    int finite = 0;
    for (int s = 0; s < cfg.samples; ++s) {
        auto rng = detail::sample_rng(cfg.seed, 350 + static_cast<std::uint64_t>(i),
                                      static_cast<std::uint64_t>(s));
        LinearSection p = random_section(R, i + 1, rng, cfg.height);
        SampledValue v = mu_H_br(pullback(f, p), i, cfg);
        if (!v.value.finite) continue;
        ++finite;
        if (best && *best != v.value.value) all_equal = false;
        if (!best || v.value.value < *best) best = v.value.value;
    }
    if (!best) return {ColengthResult::infinite(), false, 0};
    return {ColengthResult::of(*best), all_equal && finite == cfg.samples, finite};
}

/// e_i(J(f) O_n/<f>) computed through the splitting identity
/// e_i = mu^(i+1)(f) + mu^(i)(f); returns (e_0,...,e_{n-1}).
inline std::vector<long> teissier_e_i(const Poly& f, const SamplingConfig& cfg) {
    const RingPtr& R = f.ring();
    int n = R->nvars();
    MuStar ms = mu_star(f, cfg);  // values[k] = mu^(n-k)
    std::vector<long> e;
    for (int i = 0; i < n; ++i) e.push_back(ms.values[n - i - 1] + ms.values[n - i]);
    return e;
}

struct SplitRow {
    int i;
    long mu_X_i;
    long mu_i_f;
    long mu_im1_fh;
    bool holds;
};

struct SplitReport {
    std::vector<SplitRow> rows;  // i = 2..n
    long mu_X_val = 0;
    long mu_X_nm1 = 0;
    long e_jf = 0;  // e(J(f) O_n/<f>) = mu^(n) + mu^(n-1)
    long e_jm = 0;  // e(JM(f,h)) = colength(<f,h> + J(f,h,l_1)), generic l_1
    bool sum_holds = false;
};

/// The two splitting identities for a homogeneous hypersurface with
/// isolated singularity: mu_X^(i)(f) = mu^(i)(f) + mu^(i-1)(f,h) for
/// i = 2..n, and mu_X(f) + mu_X^(n-1)(f) = e(J(f)O_n/<f>) + e(JM(f,h)).
inline SplitReport split_check(const Poly& f, const VarietySpec& X, const SamplingConfig& cfg) {
    const RingPtr& R = f.ring();
    int n = R->nvars();
    if (X.kind != VarietyKind::wh_hypersurface)
        throw HypothesisError("split_check: X must be a hypersurface with isolated singularity");
    const Poly& h = X.equations[0];
    std::vector<long> ones(n, 1);
    if (!h.is_weighted_homogeneous(ones))
        throw HypothesisError("split_check: the identities require a homogeneous equation");
    validate_variety(X);
    DerlogModule D = derlog_of(X);
    ColengthResult muX = mu_X(f, D).value;
    if (!muX.finite) throw HypothesisError("split_check: mu_X(f) must be finite");

    MuStar ms = mu_star(f, cfg);
    MuStarIcis fh_star = mu_star_icis({f, h}, cfg);  // (mu^(n-1)(f,h), ..., mu^(0))

    SplitReport rep;
    for (int i = 2; i <= n; ++i) {
        long lhs = i == n ? muX.value : mu_X_i(f, X, i, cfg).value.value;
        long mu_i = ms.values[n - i];
        long mu_im1_fh = fh_star.values[n - 1 - (i - 1)];
        rep.rows.push_back({i, lhs, mu_i, mu_im1_fh, lhs == mu_i + mu_im1_fh});
    }
    rep.mu_X_val = muX.value;
    rep.mu_X_nm1 = n >= 2 ? mu_X_i(f, X, n - 1, cfg).value.value : muX.value;
    rep.e_jf = ms.values[0] + ms.values[1];

    std::optional<long> best;
    for (int s = 0; s < cfg.samples; ++s) {
        auto rng = detail::sample_rng(cfg.seed, 400, static_cast<std::uint64_t>(s));
        Poly l(R);
        for (int j = 0; j < n; ++j) {
            Rational c = detail::random_coeff(rng, cfg.height);
            if (c != 0) l += Poly::variable(R, j, c);
        }
        if (l.is_zero()) continue;
        ColengthResult c =
            colength(SubModule::ideal(R, {f, h}).plus(map_jacobian_minors({f, h, l})));
        if (!c.finite) continue;
        if (!best || c.value < *best) best = c.value;
    }
    if (!best) throw HypothesisError("split_check: e(JM(f,h)) degenerate for every sample");
    rep.e_jm = *best;
    rep.sum_holds = rep.mu_X_val + rep.mu_X_nm1 == rep.e_jf + rep.e_jm;
    return rep;
}

}  // namespace brsing
