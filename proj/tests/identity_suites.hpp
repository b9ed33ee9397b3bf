#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "brsing/brsing.hpp"

// Randomized, seeded identity suites shared by the unit tests and the
// acceptance runner. Every suite draws at least 25 valid instances
// (degrees <= 6, n <= 4); instances that fail an identity's hypotheses
// are skipped and do not count. Zero violations are tolerated.

namespace suites {

using namespace brsing;

struct SuiteResult {
    int valid = 0;
    int violations = 0;
    std::vector<std::string> notes;  // one per violation

    bool passed(int required = 25) const { return violations == 0 && valid >= required; }
};

namespace detail2 {

inline SamplingConfig fast_cfg(std::uint64_t seed) {
    SamplingConfig c;
    c.seed = seed;
    c.samples = 3;
    c.height = 7;
    return c;
}

// All exponents of total degree between lo and hi (n <= 4, hi small).
inline std::vector<Exponent> exponents_between(int n, int lo, int hi) {
    std::vector<Exponent> out;
    Exponent e(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            e[pos] = left;
            int d = 0;
            for (int v : e) d += v;
            if (d >= lo) out.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    for (int d = lo; d <= hi; ++d) rec(0, d);
    return out;
}

// Random polynomial with support between the two total degrees; roughly
// half the candidate monomials appear, with small nonzero coefficients.
inline Poly random_poly(const RingPtr& R, std::mt19937_64& rng, int lo, int hi, long height) {
    Poly f(R);
    for (const auto& e : exponents_between(R->nvars(), lo, hi)) {
        if (rng() % 2 != 0) continue;
        Rational c = brsing::detail::random_coeff(rng, height);
        if (c != 0) f.add_term(e, c);
    }
    return f;
}

inline Rational nonzero_coeff(std::mt19937_64& rng, long height) {
    Rational c = brsing::detail::random_coeff(rng, height);
    while (c == 0) c = brsing::detail::random_coeff(rng, height);
    return c;
}

// Two-term Brieskorn curve x^a + c y^b, weighted homogeneous for (b, a).
inline VarietySpec brieskorn_curve(const RingPtr& R, long a, long b, const Rational& c) {
    Poly h = Poly::monomial(R, {static_cast<int>(a), 0}) +
             Poly::monomial(R, {0, static_cast<int>(b)}, c);
    return {R, {h}, std::vector<long>{b, a}, VarietyKind::wh_hypersurface, true};
}

inline Poly random_diagonal_quadric(const RingPtr& R, std::mt19937_64& rng) {
    int n = R->nvars();
    Poly h(R);
    for (int j = 0; j < n; ++j) {
        Exponent e(n, 0);
        e[j] = 2;
        h += Poly::monomial(R, e, nonzero_coeff(rng, 5));
    }
    return h;
}

inline void violate(SuiteResult& r, const std::string& what) {
    ++r.violations;
    r.notes.push_back(what);
}

}  // namespace detail2

// mu_X(f) = mu(f) + mu(f,h) for weighted homogeneous h with isolated
// singularity and f with finite mu_X(f).
inline SuiteResult split_off_icis_term() {
    using namespace detail2;
    SamplingConfig cfg = fast_cfg(11);
    SuiteResult res;
    for (int t = 0; t < 40 && res.valid < 27; ++t) {
        auto rng = brsing::detail::sample_rng(11, 9200, static_cast<std::uint64_t>(t));
        RingPtr R;
        std::optional<VarietySpec> X;
        if (t % 4 != 3) {
            R = make_ring({"x", "y"});
            long a = 2 + static_cast<long>(rng() % 3), b = 2 + static_cast<long>(rng() % 3);
            X = brieskorn_curve(R, a, b, nonzero_coeff(rng, 5));
        } else {
            R = make_ring({"x", "y", "z"});
            X = VarietySpec{R, {random_diagonal_quadric(R, rng)}, std::vector<long>{1, 1, 1},
                            VarietyKind::wh_hypersurface, true};
        }
        // half the draws are forced singular at 0 (no linear part)
        int lo = (rng() % 2 == 0) ? 1 : 2;
        Poly f = random_poly(R, rng, lo, 4, 5);
        if (f.is_zero()) continue;
        ColengthResult mu_f = milnor(f);
        if (!mu_f.finite) continue;
        DerlogModule D = derlog_of(*X);
        ColengthResult muX = mu_X(f, D).value;
        if (!muX.finite) continue;
        long mu_fh;
        try {
            mu_fh = milnor_icis({f, X->equations[0]}, cfg).value;
        } catch (const HypothesisError&) {
            continue;
        }
        if (muX.value != mu_f.value + mu_fh) {
            std::ostringstream os;
            os << "trial " << t << ": mu_X = " << muX.value << " but mu + mu(f,h) = "
               << mu_f.value << " + " << mu_fh << " for f = " << f.to_string()
               << ", h = " << X->equations[0].to_string();
            violate(res, os.str());
        }
        ++res.valid;
    }
    return res;
}

// mu_X(f) - mu_Y(h) = mu(f) - mu(h) for weighted homogeneous f and h
// (possibly for different weight vectors), both with finite relative numbers.
inline SuiteResult milnor_defect_symmetry() {
    using namespace detail2;
    SuiteResult res;
    for (int t = 0; t < 45 && res.valid < 27; ++t) {
        auto rng = brsing::detail::sample_rng(13, 9210, static_cast<std::uint64_t>(t));
        RingPtr R;
        std::optional<Poly> fo, ho;
        std::vector<long> wf, wh;
        if (t % 3 != 2) {
            // plane Brieskorn pair, independent weight vectors
            R = make_ring({"x", "y"});
            long a = 2 + static_cast<long>(rng() % 3), b = 2 + static_cast<long>(rng() % 3);
            long c = 2 + static_cast<long>(rng() % 3), d = 2 + static_cast<long>(rng() % 3);
            ho = Poly::monomial(R, {static_cast<int>(a), 0}) +
                 Poly::monomial(R, {0, static_cast<int>(b)}, nonzero_coeff(rng, 5));
            fo = Poly::monomial(R, {static_cast<int>(c), 0}) +
                 Poly::monomial(R, {0, static_cast<int>(d)}, nonzero_coeff(rng, 5));
            wh = {b, a};
            wf = {d, c};
        } else {
            // random homogeneous forms in 3 variables, degree 2 or 3
            R = make_ring({"x", "y", "z"});
            int dh = 2 + static_cast<int>(rng() % 2), df = 2 + static_cast<int>(rng() % 2);
            ho = random_poly(R, rng, dh, dh, 5);
            fo = random_poly(R, rng, df, df, 5);
            wh = wf = {1, 1, 1};
        }
        const Poly& f = *fo;
        const Poly& h = *ho;
        if (f.is_zero() || h.is_zero()) continue;
        if (!f.is_weighted_homogeneous(wf) || !h.is_weighted_homogeneous(wh)) continue;
        ColengthResult mu_f = milnor(f), mu_h = milnor(h);
        if (!mu_f.finite || !mu_h.finite) continue;
        VarietySpec X{R, {h}, wh, VarietyKind::wh_hypersurface, true};
        VarietySpec Y{R, {f}, wf, VarietyKind::wh_hypersurface, true};
        ColengthResult muXf = mu_X(f, derlog_of(X)).value;
        ColengthResult muYh = mu_X(h, derlog_of(Y)).value;
        if (!muXf.finite || !muYh.finite) continue;
        if (muXf.value - muYh.value != mu_f.value - mu_h.value) {
            std::ostringstream os;
            os << "trial " << t << ": " << muXf.value << " - " << muYh.value
               << " != " << mu_f.value << " - " << mu_h.value << " for f = " << f.to_string()
               << ", h = " << h.to_string();
            violate(res, os.str());
        }
        ++res.valid;
    }
    return res;
}

// colength(<f> + J(f,h)) = colength(<theta_w(f)> + J(f,h)) whenever the
// right-hand side is finite, for weighted homogeneous h with isolated
// singularity.
inline SuiteResult euler_substitution() {
    using namespace detail2;
    SuiteResult res;
    for (int t = 0; t < 45 && res.valid < 27; ++t) {
        auto rng = brsing::detail::sample_rng(17, 9220, static_cast<std::uint64_t>(t));
        RingPtr R;
        std::optional<Poly> ho;
        std::vector<long> w;
        if (t % 3 != 2) {
            R = make_ring({"x", "y"});
            long a = 2 + static_cast<long>(rng() % 3), b = 2 + static_cast<long>(rng() % 3);
            ho = Poly::monomial(R, {static_cast<int>(a), 0}) +
                 Poly::monomial(R, {0, static_cast<int>(b)}, nonzero_coeff(rng, 5));
            w = {b, a};
        } else {
            R = make_ring({"x", "y", "z"});
            ho = random_diagonal_quadric(R, rng);
            w = {1, 1, 1};
        }
        const Poly& h = *ho;
        Poly f = random_poly(R, rng, 1, 3, 5);
        if (f.is_zero()) continue;
        std::vector<Poly> jfh = map_jacobian_minors({f, h});
        ColengthResult rhs = colength(SubModule::ideal(R, jfh).plus({euler_apply(f, w)}));
        if (!rhs.finite) continue;
        ColengthResult lhs = colength(SubModule::ideal(R, jfh).plus({f}));
        if (!lhs.finite || lhs.value != rhs.value) {
            std::ostringstream os;
            os << "trial " << t << ": with f " << (lhs.finite ? std::to_string(lhs.value)
                                                              : std::string("infinite"))
               << " vs with theta_w(f) " << rhs.value << " for f = " << f.to_string()
               << ", h = " << h.to_string();
            violate(res, os.str());
        }
        ++res.valid;
    }
    return res;
}

// mu_{H^(i)}(f|_{H^(i+1)}) = mu^(i+1)(f) + mu^(i)(f) at every level i.
inline SuiteResult restricted_section_sums() {
    using namespace detail2;
    SamplingConfig cfg = fast_cfg(19);
    SuiteResult res;
    for (int t = 0; t < 40 && res.valid < 26; ++t) {
        auto rng = brsing::detail::sample_rng(19, 9230, static_cast<std::uint64_t>(t));
        RingPtr R;
        std::optional<Poly> fo;
        if (t % 3 != 2) {
            R = make_ring({"x", "y"});
            long a = 2 + static_cast<long>(rng() % 3), b = 2 + static_cast<long>(rng() % 3);
            fo = Poly::monomial(R, {static_cast<int>(a), 0}) +
                 Poly::monomial(R, {0, static_cast<int>(b)}, nonzero_coeff(rng, 5)) +
                 random_poly(R, rng, 2, 4, 3);
        } else {
            R = make_ring({"x", "y", "z"});
            fo = Poly::monomial(R, {2, 0, 0}) +
                 Poly::monomial(R, {0, 3, 0}, nonzero_coeff(rng, 3)) +
                 Poly::monomial(R, {0, 0, 3}, nonzero_coeff(rng, 3)) +
                 random_poly(R, rng, 2, 3, 3);
        }
        const Poly& f = *fo;
        if (f.is_zero() || !milnor(f).finite) continue;
        int n = R->nvars();
        MuStar ms = mu_star(f, cfg);
        bool usable = true;
        for (int i = 0; i < n && usable; ++i) {
            SampledValue lhs = mu_H_restricted(f, i, cfg);
            if (!lhs.value.finite) {
                usable = false;
                break;
            }
            long rhs = ms.values[n - i - 1] + ms.values[n - i];
            if (lhs.value.value != rhs) {
                std::ostringstream os;
                os << "trial " << t << " level " << i << ": " << lhs.value.value
                   << " != " << rhs << " for f = " << f.to_string();
                violate(res, os.str());
            }
        }
        if (usable) ++res.valid;
    }
    return res;
}

// mu_X^(i)(f) = mu^(i)(f) + mu^(i-1)(f,h) for i = 2..n, together with
// mu_X(f) + mu_X^(n-1)(f) = e(J(f) O/<f>) + e(JM(f,h)), for homogeneous h
// with isolated singularity.
inline SuiteResult mixed_sequence_split() {
    using namespace detail2;
    SamplingConfig cfg = fast_cfg(23);
    SuiteResult res;
    for (int t = 0; t < 45 && res.valid < 26; ++t) {
        auto rng = brsing::detail::sample_rng(23, 9240, static_cast<std::uint64_t>(t));
        RingPtr R;
        std::optional<Poly> ho;
        if (t % 3 != 2) {
            R = make_ring({"x", "y"});
            int d = 2 + static_cast<int>(rng() % 2);
            ho = random_poly(R, rng, d, d, 5);
        } else {
            R = make_ring({"x", "y", "z"});
            ho = random_diagonal_quadric(R, rng);
        }
        const Poly& h = *ho;
        if (h.is_zero() || !milnor(h).finite) continue;
        Poly f = random_poly(R, rng, 1, 3, 5);
        if (f.is_zero() || !milnor(f).finite) continue;
        VarietySpec X{R, {h}, std::vector<long>(R->nvars(), 1), VarietyKind::wh_hypersurface,
                      true};
        std::optional<SplitReport> rep;
        try {
            rep = split_check(f, X, cfg);
        } catch (const HypothesisError&) {
            continue;
        }
        for (const auto& row : rep->rows) {
            if (!row.holds) {
                std::ostringstream os;
                os << "trial " << t << " level " << row.i << ": " << row.mu_X_i
                   << " != " << row.mu_i_f << " + " << row.mu_im1_fh
                   << " for f = " << f.to_string() << ", h = " << h.to_string();
                violate(res, os.str());
            }
        }
        if (!rep->sum_holds) {
            std::ostringstream os;
            os << "trial " << t << ": " << rep->mu_X_val << " + " << rep->mu_X_nm1
               << " != " << rep->e_jf << " + " << rep->e_jm << " for f = " << f.to_string()
               << ", h = " << h.to_string();
            violate(res, os.str());
        }
        ++res.valid;
    }
    return res;
}

// mu_{p^{-1}(X)}(f o p) >= mu^(i)(f) for every admissible section p;
// checked on the sampled minimum, which bounds every sample from below.
inline SuiteResult mixed_lower_bound() {
    using namespace detail2;
    SamplingConfig cfg = fast_cfg(29);
    SuiteResult res;
    for (int t = 0; t < 40 && res.valid < 26; ++t) {
        auto rng = brsing::detail::sample_rng(29, 9250, static_cast<std::uint64_t>(t));
        RingPtr R;
        std::optional<VarietySpec> X;
        if (t % 2 == 0) {
            R = make_ring({"x", "y"});
            long a = 2 + static_cast<long>(rng() % 2), b = 2 + static_cast<long>(rng() % 2);
            X = brieskorn_curve(R, a, b, nonzero_coeff(rng, 5));
        } else {
            R = make_ring({"x", "y", "z"});
            if (rng() % 2 == 0) {
                X = VarietySpec{R, {parse_poly(R, "x*y*z")}, std::nullopt, VarietyKind::general,
                                true};
            } else {
                X = VarietySpec{R, {random_diagonal_quadric(R, rng)}, std::vector<long>{1, 1, 1},
                                VarietyKind::wh_hypersurface, true};
            }
        }
        Poly f = random_poly(R, rng, 1, 3, 5);
        if (f.is_zero() || !milnor(f).finite) continue;
        int n = R->nvars();
        MuStar ms = mu_star(f, cfg);
        int levels = 0;
        for (int i = 1; i <= n; ++i) {
            MuXiResult m;
            try {
                m = mu_X_i(f, *X, i, cfg);
            } catch (const HypothesisError&) {
                continue;
            }
            if (!m.value.finite) continue;
            if (m.value.value < ms.values[n - i]) {
                std::ostringstream os;
                os << "trial " << t << " level " << i << ": " << m.value.value << " < "
                   << ms.values[n - i] << " for f = " << f.to_string();
                violate(res, os.str());
            }
            ++levels;
        }
        if (levels > 0) ++res.valid;
    }
    return res;
}

// Low_X(p) subset Theta_{p^{-1}(X)} whenever h and h o p are reduced.
inline SuiteResult lowerable_inclusion() {
    using namespace detail2;
    SuiteResult res;
    struct Entry {
        RingPtr R;
        VarietySpec X;
        int i;
    };
    std::vector<Entry> corpus;
    {
        RingPtr R3 = make_ring({"x", "y", "z"});
        corpus.push_back({R3,
                          {R3, {parse_poly(R3, "x*y*z")}, std::nullopt, VarietyKind::general,
                           true},
                          2});
        corpus.push_back({R3,
                          {R3, {parse_poly(R3, "x^2 + y^2 + z^2")}, std::vector<long>{1, 1, 1},
                           VarietyKind::wh_hypersurface, true},
                          2});
        corpus.push_back({R3,
                          {R3, {parse_poly(R3, "x^2 + y^2 - z^2")}, std::vector<long>{1, 1, 1},
                           VarietyKind::wh_hypersurface, true},
                          2});
        corpus.push_back({R3,
                          {R3, {parse_poly(R3, "x^3 + y^3 + z^3")}, std::vector<long>{1, 1, 1},
                           VarietyKind::wh_hypersurface, true},
                          2});
        RingPtr R2 = make_ring({"x", "y"});
        // non-homogeneous reduced curves: the inclusion needs no homogeneity
        corpus.push_back({R2,
                          {R2, {parse_poly(R2, "x^2 - y^3")}, std::nullopt, VarietyKind::general,
                           true},
                          1});
        corpus.push_back({R2,
                          {R2, {parse_poly(R2, "x*y + x^3 + y^4")}, std::nullopt,
                           VarietyKind::general, true},
                          1});
    }
    for (int s = 0; s < 9; ++s) {
        for (std::size_t xi = 0; xi < corpus.size(); ++xi) {
            const Entry& e = corpus[xi];
            auto rng = brsing::detail::sample_rng(31, 9260 + xi, static_cast<std::uint64_t>(s));
            LinearSection p = random_section(e.R, e.i, rng, 7);
            Poly hp = pullback(e.X.equations[0], p);
            // the hypothesis: the pulled-back equation must stay reduced
            if (hp.is_zero() || !is_squarefree_germ(hp)) continue;
            DerlogModule D = derlog_of(e.X);
            std::optional<LowLiftReport> rep;
            try {
                rep = damon_inclusions(e.X, D, p);
            } catch (const ResourceCapError&) {
                continue;
            }
            if (!rep->pullback_certified) continue;
            if (rep->relation == LowRelation::violates) {
                std::ostringstream os;
                os << "variety " << xi << " sample " << s << ": inclusion fails, pullback "
                   << hp.to_string();
                violate(res, os.str());
            }
            ++res.valid;
        }
    }
    return res;
}

// Low_X(p) = Theta_{p^{-1}(X)} for a homogeneous hypersurface with isolated
// singularity whose pullback is again a positive-dimensional hypersurface
// with isolated singularity.
inline SuiteResult lowerable_equality() {
    using namespace detail2;
    SuiteResult res;
    struct Entry {
        RingPtr R;
        VarietySpec X;
        int i;
    };
    std::vector<Entry> corpus;
    {
        RingPtr R3 = make_ring({"x", "y", "z"});
        auto hyp = [&](const char* s) {
            return VarietySpec{R3, {parse_poly(R3, s)}, std::vector<long>{1, 1, 1},
                               VarietyKind::wh_hypersurface, true};
        };
        corpus.push_back({R3, hyp("x^2 + y^2 + z^2"), 2});
        corpus.push_back({R3, hyp("x^2 + y^2 - z^2"), 2});
        corpus.push_back({R3, hyp("x^2 + 2*y^2 + 3*z^2"), 2});
        corpus.push_back({R3, hyp("x^3 + y^3 + z^3"), 2});
        corpus.push_back({R3, hyp("x^3 + y^3 + z^3 + x*y*z"), 2});
        RingPtr R4 = make_ring({"x", "y", "z", "w"});
        corpus.push_back({R4,
                          {R4, {parse_poly(R4, "x^2 + y^2 + z^2 + w^2")},
                           std::vector<long>{1, 1, 1, 1}, VarietyKind::wh_hypersurface, true},
                          3});
    }
    for (int s = 0; s < 7; ++s) {
        for (std::size_t xi = 0; xi < corpus.size(); ++xi) {
            const Entry& e = corpus[xi];
            auto rng = brsing::detail::sample_rng(37, 9280 + xi, static_cast<std::uint64_t>(s));
            LinearSection p = random_section(e.R, e.i, rng, 7);
            DerivedVariety dv = pullback_variety(e.X, p);
            // the hypothesis: the pullback must be a positive-dimensional
            // hypersurface with isolated singularity
            if (dv.spec.kind != VarietyKind::wh_hypersurface) continue;
            DerlogModule D = derlog_of(e.X);
            std::optional<LowLiftReport> rep;
            try {
                rep = damon_inclusions(e.X, D, p);
            } catch (const ResourceCapError&) {
                continue;
            }
            if (!rep->pullback_certified || rep->relation != LowRelation::equal) {
                std::ostringstream os;
                os << "variety " << xi << " sample " << s << ": expected equality, got "
                   << (rep->pullback_certified ? to_string(rep->relation) : "uncertified");
                violate(res, os.str());
            }
            ++res.valid;
        }
    }
    return res;
}

}  // namespace suites
