#pragma once

#include <cstdint>
#include <random>

#include "derlog.hpp"

namespace brsing {

/// Configuration for all genericity sampling (linear sections, chain
/// recombinations, generic linear forms). Deterministic given the seed.
struct SamplingConfig {
    std::uint64_t seed = 0;
    int samples = 5;
    long height = 100;
    bool stability_required = true;
};

namespace detail {

/// Independent deterministic RNG per (stream, sample index), so that the
/// schedule of parallel or reordered samples cannot change any result.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL;
    s ^= stream * 0xff51afd7ed558ccdULL + 0x632be59bd9b4e019ULL;
    s ^= index * 0xc4ceb9fe1a85ec53ULL + 0x2545f4914f6cdd1dULL;
    return std::mt19937_64(s);
}

inline Rational random_coeff(std::mt19937_64& rng, long height) {
    unsigned long span = static_cast<unsigned long>(2 * height + 1);
    return Rational(static_cast<long>(rng() % span) - height);
}

}  // namespace detail

/// mu(f) = colength of the Jacobian ideal.
inline ColengthResult milnor(const Poly& f) {
    const RingPtr& R = f.ring();
    std::vector<Poly> partials;
    for (int j = 0; j < R->nvars(); ++j) partials.push_back(f.derivative(j));
    return colength(SubModule::ideal(R, partials));
}

/// Maximal minors of the Jacobian of a map germ with k component
/// functions; the zero ideal when k exceeds the number of variables.
inline std::vector<Poly> map_jacobian_minors(const std::vector<Poly>& fs) {
    const RingPtr& R = fs.front().ring();
    int k = static_cast<int>(fs.size());
    // more map components than variables: no maximal minors, the zero ideal
    if (k > R->nvars()) return {};
    return minors(jacobian(fs), k);
}

/// J_X(f) = ideal generated by delta(f) over the generators of Theta_X.
/// For weighted homogeneous provenances the closed-form ideal is computed
/// too and the two are required to agree.
inline SubModule jx_ideal(const Poly& f, const DerlogModule& D) {
    const RingPtr& R = f.ring();
    std::vector<Poly> gens;
    for (const auto& delta : D.base.generators()) {
        Poly g = apply_vector_field(delta, f);
        if (!g.is_zero()) {
            g.normalize_content();
            gens.push_back(std::move(g));
        }
    }
    SubModule J = SubModule::ideal(R, gens);

    std::optional<SubModule> closed;
    if (D.provenance == DerlogRoute::thm_wh_hypersurface) {
        auto w = D.variety.weights_or_ones();
        std::vector<Poly> cg = {euler_apply(f, w)};
        std::vector<Poly> fh = {f, D.variety.equations[0]};
        for (auto& m : minors(jacobian(fh), 2)) cg.push_back(std::move(m));
        closed = SubModule::ideal(R, cg);
    } else if (D.provenance == DerlogRoute::thm_wh_icis) {
        auto w = D.variety.weights_or_ones();
        std::vector<Poly> cg = {euler_apply(f, w)};
        for (const auto& h : D.variety.equations)
            for (int j = 0; j < R->nvars(); ++j) cg.push_back(h * f.derivative(j));
        std::vector<Poly> fh = {f};
        for (const auto& h : D.variety.equations) fh.push_back(h);
        for (auto& m : minors(jacobian(fh), static_cast<int>(fh.size()))) cg.push_back(std::move(m));
        closed = SubModule::ideal(R, cg);
    }
    if (closed && module_equal(J, *closed) != ModuleRelation::equal)
        throw DomainError("internal: closed-form J_X(f) disagrees with the generator route");
    return J;
}

struct MuXResult {
    ColengthResult value;
    SubModule jx;
};

/// mu_X(f) = colength of J_X(f).
inline MuXResult mu_X(const Poly& f, const DerlogModule& D) {
    SubModule J = jx_ideal(f, D);
    return {colength(J), std::move(J)};
}

/// tau_X(f) = colength of <f> + J_X(f).
inline ColengthResult tau_X(const Poly& f, const DerlogModule& D) {
    return colength(jx_ideal(f, D).plus({f}));
}

/// c(f,h) = colength of <h_1,...,h_p> + J(f,h_1,...,h_p).
inline ColengthResult c_fh(const Poly& f, const std::vector<Poly>& h) {
    const RingPtr& R = f.ring();
    std::vector<Poly> fh = {f};
    for (const auto& hi : h) fh.push_back(hi);
    return colength(SubModule::ideal(R, h).plus(map_jacobian_minors(fh)));
}

struct IcisMilnor {
    long value = 0;
    bool stable = true;       // all finite samples agreed
    int finite_samples = 0;   // how many sampled chains were non-degenerate
};

/// Milnor number of an ICIS by the iterated Le-Greuel chain over a random
/// GL_p recombination of the equations. Each sampled value is a genuine
/// alternating sum of colengths of a genuine specialization; the minimum
/// over samples is reported (upper semicontinuity). Sample 0 is always the
/// identity recombination.
inline IcisMilnor milnor_icis(const std::vector<Poly>& g, const SamplingConfig& cfg) {
    const RingPtr& R = g.front().ring();
    int n = R->nvars();
    int p = static_cast<int>(g.size());
    if (!is_icis(g)) throw HypothesisError("milnor_icis: input is not an ICIS");

    if (p == n) {
        ColengthResult c = colength(SubModule::ideal(R, g));
        return {c.value - 1, true, 1};
    }

    auto chain_value = [&](const std::vector<Poly>& gs) -> std::optional<long> {
        long acc = 0;
        std::vector<Poly> head;
        for (int k = 1; k <= p; ++k) {
            std::vector<Poly> trunc(gs.begin(), gs.begin() + k);
            SubModule I = SubModule::ideal(R, head).plus(map_jacobian_minors(trunc));
            ColengthResult c = colength(I);
            if (!c.finite) return std::nullopt;
            long sign = ((p - k) % 2 == 0) ? 1 : -1;
            acc += sign * c.value;
            head.push_back(gs[k - 1]);
        }
        return acc;
    };

    IcisMilnor out;
    std::optional<long> best;
    bool all_equal = true;
    for (int s = 0; s < cfg.samples; ++s) {
        std::vector<Poly> gs;
        if (s == 0) {
            gs = g;
        } else {
            auto rng = detail::sample_rng(cfg.seed, 1, static_cast<std::uint64_t>(s));
            std::vector<std::vector<Rational>> M(p, std::vector<Rational>(p));
            for (auto& row : M)
                for (auto& c : row) c = detail::random_coeff(rng, cfg.height);
            // reject a singular recombination (would lose equations)
            PolyMatrix cm(R, p, p);
            for (int r = 0; r < p; ++r)
                for (int c = 0; c < p; ++c) cm.at(r, c) = Poly(R, M[r][c]);
            if (determinant(cm).is_zero()) continue;
            for (int r = 0; r < p; ++r) {
                Poly gi(R);
                for (int c = 0; c < p; ++c) gi += M[r][c] * g[c];
                gi.normalize_content();
                gs.push_back(std::move(gi));
            }
        }
        std::optional<long> v;
        try {
            v = chain_value(gs);
        } catch (const ResourceCapError&) {
            continue;  // treated like a degenerate sample
        }
        if (!v) continue;
        ++out.finite_samples;
        if (best && *best != *v) all_equal = false;
        if (!best || *v < *best) best = *v;
    }
    if (!best)
        throw HypothesisError("milnor_icis: the Le-Greuel chain degenerated for every sample");
    out.value = *best;
    out.stable = all_equal;
    return out;
}

/// mu(f,h) for a weighted homogeneous ICIS h and f with mu_X(f) finite:
/// colength of <theta_w(f), h_1,...,h_p> + J(f,h_1,...,h_p).
inline ColengthResult milnor_icis_qraro(const Poly& f, const VarietySpec& X) {
    if (X.kind != VarietyKind::wh_icis && X.kind != VarietyKind::wh_hypersurface)
        throw HypothesisError("milnor_icis_qraro: X must be a weighted homogeneous ICIS");
    DerlogModule D = derlog_of(X);
    if (!mu_X(f, D).value.finite)
        throw HypothesisError("milnor_icis_qraro: mu_X(f) must be finite");
    const RingPtr& R = f.ring();
    auto w = X.weights_or_ones();
    std::vector<Poly> gens = {euler_apply(f, w)};
    for (const auto& h : X.equations) gens.push_back(h);
    std::vector<Poly> fh = {f};
    for (const auto& h : X.equations) fh.push_back(h);
    for (auto& m : map_jacobian_minors(fh)) gens.push_back(std::move(m));
    return colength(SubModule::ideal(R, gens));
}

/// Briancon-Maynadier: mu(h) for a semi-weighted homogeneous map germ as
/// colength of <theta_w(h_1),...,theta_w(h_p)> + J(h_1,...,h_p).
inline ColengthResult milnor_swh(const std::vector<Poly>& h, const std::vector<long>& w) {
    const RingPtr& R = h.front().ring();
    std::vector<Poly> principal;
    for (const auto& hi : h) principal.push_back(hi.principal_part(w));
    if (!is_icis(principal))
        throw HypothesisError("milnor_swh: the principal parts do not form an ICIS");
    std::vector<Poly> gens;
    for (const auto& hi : h) gens.push_back(euler_apply(hi, w));
    for (auto& m : map_jacobian_minors(h)) gens.push_back(std::move(m));
    return colength(SubModule::ideal(R, gens));
}

struct RCertificate {
    long r = 0;
    long colength_I = 0;
    long colength_fI = 0;  // colength of <f> + I
    bool ratio_bound_holds = false;
    bool equality = false;  // kernel of mult-by-f equals <f^{r-1}> + I
    SubModule kernel_ideal;
};

/// The sharpness certificate for the bound colength(I) <= r * colength(<f>+I):
/// r = least power of f in I, the kernel ideal (I : f), and the equality
/// characterization (I : f) = <f^{r-1}> + I.
inline RCertificate r_certificate(const Poly& f, const SubModule& I) {
    ColengthResult cI = colength(I);
    if (!cI.finite) throw HypothesisError("r_certificate: colength(I) must be finite");
    std::optional<long> r = power_index(f, I);
    if (!r) throw HypothesisError("r_certificate: no power of f lies in I");
    ColengthResult cfI = colength(I.plus({f}));
    SubModule kernel = ideal_quotient(I, f);
    SubModule rhs = I.plus({f.pow(*r - 1)});
    bool eq = module_equal(kernel, rhs) == ModuleRelation::equal;
    return {*r, cI.value, cfI.value, cI.value <= *r * cfI.value, eq, std::move(kernel)};
}

struct MudehReport {
    long r = 0;
    long mu_h = 0;
    long mu_fh = 0;
    bool holds = false;     // mu(h) <= (r-1) * mu(f,h)
    bool equality = false;  // kernel characterization in O_n/(<h>+J(f,h))
};

/// mu(h) <= (r-1) mu(f,h) with r the power index of theta_w(f) in the
/// image of J(f,h) in O_n/<h>. All quotient-ring operations are realized
/// by adjoining <h> upstairs.
inline MudehReport mudeh_check(const Poly& f, const VarietySpec& X, const SamplingConfig& cfg) {
    if (X.kind != VarietyKind::wh_icis && X.kind != VarietyKind::wh_hypersurface)
        throw HypothesisError("mudeh_check: X must be a weighted homogeneous ICIS");
    DerlogModule D = derlog_of(X);
    if (!mu_X(f, D).value.finite)
        throw HypothesisError("mudeh_check: mu_X(f) must be finite");
    const RingPtr& R = f.ring();
    auto w = X.weights_or_ones();
    Poly g = euler_apply(f, w);

    std::vector<Poly> fh = {f};
    for (const auto& h : X.equations) fh.push_back(h);
    SubModule I = SubModule::ideal(R, X.equations).plus(map_jacobian_minors(fh));

    std::optional<long> r = power_index(g, I);
    if (!r) throw HypothesisError("mudeh_check: theta_w(f) has no power in the quotient ideal");

    MudehReport rep;
    rep.r = *r;
    rep.mu_h = milnor_icis(X.equations, cfg).value;
    rep.mu_fh = milnor_icis_qraro(f, X).value;
    rep.holds = rep.mu_h <= (rep.r - 1) * rep.mu_fh;
    SubModule kernel = ideal_quotient(I, g);
    rep.equality = module_equal(kernel, I.plus({g.pow(*r - 1)})) == ModuleRelation::equal;
    return rep;
}

}  // namespace brsing
