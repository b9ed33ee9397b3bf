#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "vecpoly.hpp"

namespace brsing {

namespace detail {

inline bool exp_divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponent exp_lcm(const Exponent& a, const Exponent& b) {
    Exponent e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) e[i] = std::max(a[i], b[i]);
    return e;
}

inline Exponent exp_sub(const Exponent& a, const Exponent& b) {
    Exponent e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] - b[i];
    return e;
}

inline long ecart(const VecPoly& v, const RingSpec& R) {
    return v.max_weighted_degree() - R.weighted_degree(v.lead().exp);
}

/// Corner bound for ideals (rank-1 modules): the least D such that every
/// monomial of weighted degree > D is divisible by a pure-power leading
/// monomial of the current basis. Any such monomial reduces to zero
/// against the basis (each reduction step stays above D), so terms above
/// the bound may be discarded without changing the generated ideal.
/// Returns nullopt when some variable has no pure power among the leads.
inline std::optional<long> corner_bound(const std::vector<VecPoly>& S, const RingSpec& R) {
    int n = R.nvars();
    std::vector<long> box(n, -1);
    if (!S.empty() && S.front().rank() != 1)
        return std::nullopt;  // truncation is sound for ideals only
    for (const auto& g : S) {
        if (g.is_zero()) continue;
        LeadTerm lt = g.lead();
        int support = -1;
        bool pure = true;
        for (int j = 0; j < n; ++j) {
            if (lt.exp[j] == 0) continue;
            if (support >= 0) {
                pure = false;
                break;
            }
            support = j;
        }
        if (!pure) continue;
        if (support < 0) return 0;  // a unit leads: everything above degree 0 reduces
        if (box[support] < 0 || lt.exp[support] < box[support]) box[support] = lt.exp[support];
    }
    long d = 0;
    for (int j = 0; j < n; ++j) {
        if (box[j] < 0) return std::nullopt;
        long w = R.weights() ? (*R.weights())[j] : 1;
        d += w * (box[j] - 1);
    }
    return std::max(d, 0L);
}

/// Maximal weighted degree over the monomials outside the monomial ideal
/// generated by `leads`; nullopt when the complement is infinite or too
/// large to enumerate. Requires every variable to carry a pure power.
inline std::optional<long> max_standard_wdeg(const std::vector<Exponent>& leads,
                                             const RingSpec& R);

/// Tight truncation bound for ideals: the maximal weighted degree D of a
/// monomial outside the monomial ideal of the current leading terms. The
/// quotient by the generated ideal is spanned by standard monomials, so by
/// Nakayama every monomial of weighted degree > D already lies in the
/// ideal and such terms may be discarded. Falls back to the pure-power
/// corner bound when the staircase is too large to enumerate; nullopt when
/// some variable has no pure power among the leads.
inline std::optional<long> trunc_bound(const std::vector<VecPoly>& S, const RingSpec& R) {
    std::optional<long> corner = corner_bound(S, R);
    if (!corner || *corner == 0) return corner;
    std::vector<Exponent> leads;
    for (const auto& g : S)
        if (!g.is_zero()) leads.push_back(g.lead().exp);
    std::optional<long> tight = max_standard_wdeg(leads, R);
    return tight ? tight : corner;
}

/// Weak normal form by Mora's algorithm with ecart-based reducer selection.
/// Returns h with u*f = sum a_i g_i + h for some unit u; in particular
/// h == 0 iff f lies in the module generated by T when T is a standard
/// basis. The result is content-normalized (a unit scaling).
inline VecPoly mora_nf(VecPoly h, const std::vector<VecPoly>& T, const RingSpec& R,
                       std::optional<long> trunc = std::nullopt) {
    struct Red {
        const VecPoly* v;
        LeadTerm lt;
        long ecart;
    };
    std::vector<Red> reds;
    reds.reserve(T.size());
    for (const auto& g : T)
        if (!g.is_zero()) reds.push_back({&g, g.lead(), ecart(g, R)});
    std::vector<std::unique_ptr<VecPoly>> extra;  // keeps added intermediate reducers alive

    if (trunc) h.truncate_above_wdeg(*trunc);

    long iterations = 0;
    const long iter_cap = 500000;
    while (!h.is_zero()) {
        if (++iterations > iter_cap)
            throw ResourceCapError("Mora normal form iteration cap exceeded");
        LeadTerm lh = h.lead();
        if (R.total_degree(lh.exp) > R.limits().max_total_degree)
            throw ResourceCapError("total-degree cap exceeded in normal form");
        int best = -1;
        for (std::size_t k = 0; k < reds.size(); ++k) {
            if (reds[k].lt.comp != lh.comp || !exp_divides(reds[k].lt.exp, lh.exp)) continue;
            if (best < 0 || reds[k].ecart < reds[best].ecart) best = static_cast<int>(k);
        }
        if (best < 0) break;
        long eh = h.max_weighted_degree() - R.weighted_degree(lh.exp);
        if (reds[best].ecart > eh) {
            extra.push_back(std::make_unique<VecPoly>(h));
            reds.push_back({extra.back().get(), lh, eh});
        }
        const Red& g = reds[best];
        h -= g.v->times_term(lh.coeff / g.lt.coeff, exp_sub(lh.exp, g.lt.exp));
        if (trunc) h.truncate_above_wdeg(*trunc);
        h.normalize_content();
    }
    return h;
}

/// Scale two vectors by one shared unit constant so that their joint
/// coefficient content is trivial (keeps sizes small during division).
inline Rational joint_normalize(VecPoly& a, VecPoly& b) {
    mpz_class num_gcd = 0, den_lcm = 1;
    auto absorb = [&](const VecPoly& v) {
        for (const auto& p : v.entries())
            for (const auto& [e, c] : p.terms()) {
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
            }
    };
    absorb(a);
    absorb(b);
    if (num_gcd == 0) return Rational(1);
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (int i = 0; i < a.rank(); ++i) a[i] *= scale;
    for (int i = 0; i < b.rank(); ++i) b[i] *= scale;
    return scale;
}

/// Reduced normal form by plain division inside a truncated region: terms
/// above the weighted-degree bound are discarded, and every term of the
/// result is irreducible against T. The region's monomials are finite, so
/// plain division terminates; no Mora unit tracking is needed, and the
/// quotient relation h = sum a_k g_k + result holds up to one shared unit
/// constant (from joint content normalization).
inline VecPoly truncated_nf(VecPoly h, const std::vector<VecPoly>& T, const RingSpec& R,
                            long trunc, Rational* scale_acc = nullptr) {
    if (scale_acc) *scale_acc = 1;
    h.truncate_above_wdeg(trunc);
    if (h.is_zero()) return h;
    struct Red {
        const VecPoly* v;
        LeadTerm lt;
        std::size_t weight;  // term count: prefer sparse reducers
    };
    std::vector<Red> reds;
    reds.reserve(T.size());
    for (const auto& g : T) {
        if (g.is_zero()) continue;
        LeadTerm lt = g.lead();
        std::size_t w = 0;
        for (const auto& p : g.entries()) w += p.term_count();
        reds.push_back({&g, std::move(lt), w});
    }
    VecPoly done(h.ring(), h.rank());
    long iterations = 0;
    const long iter_cap = 500000;
    while (!h.is_zero()) {
        if (++iterations > iter_cap)
            throw ResourceCapError("truncated normal form iteration cap exceeded");
        LeadTerm lh = h.lead();
        int best = -1;
        for (std::size_t k = 0; k < reds.size(); ++k) {
            if (reds[k].lt.comp != lh.comp || !exp_divides(reds[k].lt.exp, lh.exp)) continue;
            if (best < 0 || reds[k].weight < reds[best].weight) best = static_cast<int>(k);
        }
        if (best < 0) {
            done[lh.comp].add_term(lh.exp, lh.coeff);
            h[lh.comp].add_term(lh.exp, -lh.coeff);
            continue;
        }
        const Red& g = reds[best];
        h -= g.v->times_term(lh.coeff / g.lt.coeff, exp_sub(lh.exp, g.lt.exp));
        h.truncate_above_wdeg(trunc);
        Rational s = joint_normalize(done, h);
        if (scale_acc) *scale_acc *= s;
    }
    return done;
}

/// Replace S[k] by its tail-reduced form against the whole basis (self-
/// reduction of tail terms only rescales by a unit). Requires a truncation
/// bound so that plain division applies.
inline void tail_reduce(std::vector<VecPoly>& S, std::size_t k, const RingSpec& R, long trunc) {
    if (S[k].is_zero()) return;
    LeadTerm lt = S[k].lead();
    VecPoly tail = S[k];
    tail[lt.comp].add_term(lt.exp, -lt.coeff);
    if (tail.is_zero()) return;
    Rational scale;
    VecPoly red = truncated_nf(std::move(tail), S, R, trunc, &scale);
    VecPoly out(S[k].ring(), S[k].rank());
    out[lt.comp].add_term(lt.exp, scale * lt.coeff);
    out += red;
    out.normalize_content();
    S[k] = std::move(out);
}

/// Standard basis by Mora/Buchberger over the position-over-term extension
/// of the ring's local ordering. No pair criteria are applied (the product
/// criterion is unsound for non-global orderings).
/// With degree_cap set, computes a d-truncated standard basis: all terms of
/// weighted degree > d are discarded throughout. The leading ideal is then
/// exact in the region of weighted degree <= d (truncated terms can never
/// create smaller leads), which suffices for staircase counting once the
/// corner bound falls inside the region.
inline std::vector<VecPoly> mora_std(const std::vector<VecPoly>& gens, const RingSpec& R,
                                     std::optional<long> degree_cap = std::nullopt) {
    std::vector<VecPoly> S;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        VecPoly v = g;
        v.normalize_content();
        S.push_back(std::move(v));
    }
    struct Pair {
        std::size_t i, j;
        long deg;  // weighted degree of the lcm of the leading monomials
    };
    std::vector<Pair> pairs;
    auto push_pairs = [&](std::size_t j) {
        LeadTerm lj = S[j].lead();
        for (std::size_t i = 0; i < j; ++i) {
            LeadTerm li = S[i].lead();
            if (li.comp != lj.comp) continue;
            pairs.push_back({i, j, R.weighted_degree(exp_lcm(li.exp, lj.exp))});
        }
    };
    for (std::size_t j = 0; j < S.size(); ++j) push_pairs(j);

    std::optional<long> trunc = trunc_bound(S, R);
    if (degree_cap && (!trunc || *degree_cap < *trunc)) trunc = degree_cap;
    auto apply_trunc = [&]() {
        if (!trunc) return;
        for (auto& g : S) {
            g.truncate_above_wdeg(*trunc, /*keep_lead=*/true);
            g.normalize_content();
        }
        // keep tails fully reduced: short elements keep coefficient growth
        // and division costs contained
        for (std::size_t k = 0; k < S.size(); ++k) tail_reduce(S, k, R, *trunc);
    };
    apply_trunc();

    while (!pairs.empty()) {
        std::size_t pick = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k)
            if (pairs[k].deg < pairs[pick].deg) pick = k;
        Pair p = pairs[pick];
        pairs[pick] = pairs.back();
        pairs.pop_back();
        // the S-polynomial of such a pair truncates to zero outright
        if (trunc && p.deg > *trunc) continue;

        LeadTerm li = S[p.i].lead(), lj = S[p.j].lead();
        Exponent l = exp_lcm(li.exp, lj.exp);
        VecPoly sp = S[p.i].times_term(lj.coeff, exp_sub(l, li.exp)) -
                     S[p.j].times_term(li.coeff, exp_sub(l, lj.exp));
        VecPoly h = trunc ? truncated_nf(std::move(sp), S, R, *trunc)
                          : mora_nf(std::move(sp), S, R);
        if (h.is_zero()) continue;
        h.normalize_content();
        if (h.max_total_degree() > R.limits().max_total_degree)
            throw ResourceCapError("total-degree cap exceeded in standard basis");
        S.push_back(std::move(h));
        if (S.size() > R.limits().max_basis_size)
            throw ResourceCapError("standard basis size cap exceeded");
        push_pairs(S.size() - 1);
        std::optional<long> better = trunc_bound(S, R);
        if (better && (!trunc || *better < *trunc)) {
            trunc = better;
            apply_trunc();
        }
    }
    return S;
}

}  // namespace detail

struct ColengthResult {
    bool finite = false;
    long value = 0;  // meaningful iff finite
    std::optional<std::vector<Exponent>> standard_monomials;

    static ColengthResult infinite() { return {}; }
    static ColengthResult of(long v) { return {true, v, std::nullopt}; }
    bool operator==(const ColengthResult& o) const {
        return finite == o.finite && (!finite || value == o.value);
    }
};

/// Finitely generated submodule of O^m (ideals are the case m = 1) with a
/// lazily cached standard basis.
class SubModule {
public:
    SubModule(RingPtr ring, int rank, std::vector<VecPoly> gens)
        : ring_(std::move(ring)), rank_(rank), gens_(std::move(gens)) {
        if (rank_ < 1) throw DomainError("module rank must be positive");
        for (const auto& g : gens_)
            if (g.rank() != rank_) throw DomainError("generator rank mismatch");
    }

    static SubModule ideal(RingPtr ring, const std::vector<Poly>& gens) {
        std::vector<VecPoly> vs;
        vs.reserve(gens.size());
        for (const auto& g : gens) vs.push_back(to_vecpoly(g));
        return SubModule(std::move(ring), 1, std::move(vs));
    }

    static SubModule zero(RingPtr ring, int rank) { return SubModule(std::move(ring), rank, {}); }

    const RingPtr& ring() const { return ring_; }
    int rank() const { return rank_; }
    const std::vector<VecPoly>& generators() const { return gens_; }

    /// Generators of this module plus those of another (same rank/ring).
    SubModule plus(const SubModule& o) const {
        if (o.rank_ != rank_) throw DomainError("rank mismatch in module sum");
        std::vector<VecPoly> gens = gens_;
        gens.insert(gens.end(), o.gens_.begin(), o.gens_.end());
        return SubModule(ring_, rank_, std::move(gens));
    }

    SubModule plus(const std::vector<Poly>& extra) const {
        if (rank_ != 1) throw DomainError("poly sum only for ideals");
        return plus(SubModule::ideal(ring_, extra));
    }

    const std::vector<VecPoly>& std_basis() const {
        if (!std_) std_ = detail::mora_std(gens_, *ring_);
        return *std_;
    }
    bool basis_cached() const { return std_.has_value(); }

    bool contains(const VecPoly& v) const {
        if (v.rank() != rank_) throw DomainError("rank mismatch in membership test");
        std::optional<long> trunc;
        if (rank_ == 1) trunc = detail::trunc_bound(std_basis(), *ring_);
        if (trunc) return detail::truncated_nf(v, std_basis(), *ring_, *trunc).is_zero();
        return detail::mora_nf(v, std_basis(), *ring_).is_zero();
    }
    bool contains(const Poly& f) const { return contains(to_vecpoly(f)); }

private:
    RingPtr ring_;
    int rank_;
    std::vector<VecPoly> gens_;
    mutable std::optional<std::vector<VecPoly>> std_;
};

inline VecPoly normal_form(const VecPoly& v, const SubModule& M) {
    return detail::mora_nf(v, M.std_basis(), *M.ring());
}
inline Poly normal_form(const Poly& f, const SubModule& M) {
    return normal_form(to_vecpoly(f), M)[0];
}

namespace detail {

/// Per-component minimal generators of the leading-term module of a basis.
inline std::vector<std::vector<Exponent>> minimal_leads(const std::vector<VecPoly>& basis,
                                                        int rank) {
    std::vector<std::vector<Exponent>> lead(rank);
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        LeadTerm lt = g.lead();
        lead[lt.comp].push_back(lt.exp);
    }
    for (auto& gens : lead) {
        std::vector<Exponent> minimal;
        for (const auto& e : gens) {
            bool redundant = false;
            for (const auto& f : gens)
                if (f != e && exp_divides(f, e)) {
                    // break ties between equal exponents via pointer-free dedupe below
                    redundant = true;
                    break;
                }
            if (!redundant && std::find(minimal.begin(), minimal.end(), e) == minimal.end())
                minimal.push_back(e);
        }
        gens = std::move(minimal);
    }
    return lead;
}

inline std::vector<std::vector<Exponent>> leading_staircase(const SubModule& M) {
    return minimal_leads(M.std_basis(), M.rank());
}

/// Pure-power box of a staircase: box[j] is the least d with x_j^d among
/// the generators, or -1 when there is none.
inline std::vector<long> staircase_box(const std::vector<Exponent>& gens, int n) {
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
    }
    return box;
}

inline std::optional<long> max_standard_wdeg(const std::vector<Exponent>& leads,
                                             const RingSpec& R) {
    int n = R.nvars();
    std::vector<long> box = staircase_box(leads, n);
    long box_size = 1;
    for (int j = 0; j < n; ++j) {
        if (box[j] < 0) return std::nullopt;
        box_size *= box[j];
        if (box_size > (1L << 20)) return std::nullopt;
    }
    long D = 0;
    Exponent e(n, 0);
    while (true) {
        bool standard = true;
        for (const auto& g : leads)
            if (exp_divides(g, e)) {
                standard = false;
                break;
            }
        if (standard) D = std::max(D, R.weighted_degree(e));
        int j = 0;
        while (j < n && ++e[j] >= box[j]) e[j++] = 0;
        if (j == n) break;
    }
    return D;
}

/// Specialized completion engine for ideals inside a truncated region:
/// monomials of weighted degree <= cap are enumerated and indexed once, and
/// elements become sparse coefficient vectors over that index set, which
/// avoids all monomial-map and comparator overhead of the general engine.
/// Basis rows are content-free integer vectors; division keeps the working
/// remainder rational with a single lazily tracked scale factor. The
/// computed leading exponents are exact for monomials of weighted degree
/// <= cap; once the found staircase closes below the cap they are exact
/// outright.
class TruncIdealEngine {
public:
    using ZTerm = std::pair<int, mpz_class>;
    using ZRow = std::vector<ZTerm>;  // ascending index = descending monomial
    using QTerm = std::pair<int, Rational>;
    using QRow = std::vector<QTerm>;

    TruncIdealEngine(const RingSpec& R, long cap) : R_(&R), cap_(cap) {
        int n = R.nvars();
        if (n > 8 || cap_ > 200)
            throw ResourceCapError("truncated region unsupported for this ring");
        Exponent e(n, 0);
        enumerate(e, 0, 0);
        std::sort(mons_.begin(), mons_.end(),
                  [&](const Exponent& a, const Exponent& b) { return R.mono_greater(a, b); });
        wdeg_.reserve(mons_.size());
        index_.reserve(2 * mons_.size());
        for (std::size_t i = 0; i < mons_.size(); ++i) {
            wdeg_.push_back(R.weighted_degree(mons_[i]));
            index_.emplace(pack(mons_[i]), static_cast<int>(i));
        }
        bound_idx_ = static_cast<int>(mons_.size());
    }

    /// Minimal leading exponents of a standard basis of <gens> within the
    /// region (exact below the cap; exact everywhere once the staircase box
    /// closes below the cap).
    std::vector<Exponent> minimal_lead_exponents(const std::vector<Poly>& gens) {
        for (const auto& g : gens) {
            ZRow r = from_poly(g);
            if (!r.empty()) add_row(std::move(r));
        }
        while (!pairs_.empty()) {
            std::size_t pick = 0;
            for (std::size_t k = 1; k < pairs_.size(); ++k)
                if (pairs_[k].deg < pairs_[pick].deg) pick = k;
            Pair p = pairs_[pick];
            pairs_[pick] = pairs_.back();
            pairs_.pop_back();
            pending_.erase(pair_key(p.i, p.j));
            if (p.deg > bound_deg()) continue;  // S-polynomial truncates to zero
            if (chain_criterion(p.i, p.j)) continue;
            ZRow h = reduce(s_poly(p.i, p.j));
            if (h.empty()) continue;
            add_row(std::move(h));
            if (rows_.size() > R_->limits().max_basis_size)
                throw ResourceCapError("standard basis size cap exceeded");
        }
        std::vector<Exponent> leads;
        for (std::size_t k = 0; k < rows_.size(); ++k) leads.push_back(mons_[lead_idx(k)]);
        std::vector<Exponent> minimal;
        for (const auto& e : leads) {
            bool redundant = false;
            for (const auto& f : leads)
                if (f != e && exp_divides(f, e)) {
                    redundant = true;
                    break;
                }
            if (!redundant && std::find(minimal.begin(), minimal.end(), e) == minimal.end())
                minimal.push_back(e);
        }
        return minimal;
    }

private:
    struct Pair {
        std::size_t i, j;
        long deg;
    };

    const RingSpec* R_;
    long cap_;
    std::vector<Exponent> mons_;
    std::vector<long> wdeg_;  // non-decreasing along the sorted order
    std::unordered_map<std::uint64_t, int> index_;
    int bound_idx_;  // terms at index >= bound_idx_ are discarded
    std::vector<ZRow> rows_;
    std::vector<Pair> pairs_;
    std::unordered_set<std::uint64_t> pending_;  // unordered pair keys still queued

    long bound_deg() const {
        return bound_idx_ < static_cast<int>(mons_.size()) ? wdeg_[bound_idx_ - 1] : cap_;
    }

    void enumerate(Exponent& e, int var, long used) {
        int n = R_->nvars();
        long w = R_->weights() ? (*R_->weights())[var] : 1;
        if (var == n - 1) {
            for (e[var] = 0; used + w * e[var] <= cap_; ++e[var]) {
                mons_.push_back(e);
                if (mons_.size() > 300000)
                    throw ResourceCapError("truncated region too large to enumerate");
            }
            e[var] = 0;
            return;
        }
        for (e[var] = 0; used + w * e[var] <= cap_; ++e[var])
            enumerate(e, var + 1, used + w * e[var]);
        e[var] = 0;
    }

    static std::uint64_t pack(const Exponent& e) {
        std::uint64_t k = 0;
        for (int x : e) k = (k << 8) | static_cast<std::uint64_t>(x);
        return k;
    }

    int lead_idx(std::size_t k) const { return rows_[k].front().first; }

    ZRow from_poly(const Poly& p) {
        mpz_class den_lcm = 1;
        for (const auto& [e, c] : p.terms())
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        ZRow r;
        for (const auto& [e, c] : p.terms()) {
            if (R_->weighted_degree(e) > cap_) break;  // terms sorted, suffix is larger
            auto it = index_.find(pack(e));
            if (it == index_.end() || it->second >= bound_idx_) continue;
            r.emplace_back(it->second, mpz_class(c.get_num() * (den_lcm / c.get_den())));
        }
        strip(r);
        return r;
    }

    static void strip(ZRow& r) {
        if (r.empty()) return;
        mpz_class g = 0;
        for (const auto& [i, c] : r) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) break;
        }
        if (sgn(r.front().second) < 0) g = -g;
        if (g != 1)
            for (auto& [i, c] : r) c /= g;
    }

    /// h - b * x^shift * g, heads (which cancel by construction) excluded.
    QRow combine(const QRow& h, std::size_t h_from, const ZRow& g, std::size_t g_from,
                 const Rational& b, const Exponent& shift) {
        std::vector<std::pair<int, const mpz_class*>> gs;
        gs.reserve(g.size() - g_from);
        int n = R_->nvars();
        Exponent t(n);
        for (std::size_t j = g_from; j < g.size(); ++j) {
            const Exponent& ge = mons_[g[j].first];
            for (int v = 0; v < n; ++v) t[v] = ge[v] + shift[v];
            auto it = index_.find(pack(t));
            if (it == index_.end() || it->second >= bound_idx_) continue;
            gs.push_back({it->second, &g[j].second});
        }
        QRow out;
        out.reserve(h.size() - h_from + gs.size());
        std::size_t i = h_from, j = 0;
        while (i < h.size() || j < gs.size()) {
            if (j == gs.size() || (i < h.size() && h[i].first < gs[j].first)) {
                out.emplace_back(h[i].first, h[i].second);
                ++i;
            } else if (i == h.size() || gs[j].first < h[i].first) {
                out.emplace_back(gs[j].first, Rational(-b * (*gs[j].second)));
                ++j;
            } else {
                Rational v = h[i].second - b * (*gs[j].second);
                if (v != 0) out.emplace_back(h[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    /// Content strip of the working remainder; the removed unit is absorbed
    /// into the lazy scale factor so the tracked element is unchanged.
    static void strip_q(QRow& h, Rational& H) {
        if (h.empty()) return;
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& [i, c] : h) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (scale == 1) return;
        for (auto& [i, c] : h) c *= scale;
        H /= scale;
    }

    QRow s_poly(std::size_t i, std::size_t j) {
        const Exponent& ei = mons_[lead_idx(i)];
        const Exponent& ej = mons_[lead_idx(j)];
        Exponent l = exp_lcm(ei, ej);
        // x^(l-ei) * g_i - (lc_i/lc_j) * x^(l-ej) * g_j
        QRow gi;
        int n = R_->nvars();
        Exponent t(n);
        for (const auto& [gi_idx, c] : rows_[i]) {
            const Exponent& ge = mons_[gi_idx];
            const Exponent sh = exp_sub(l, ei);
            for (int v = 0; v < n; ++v) t[v] = ge[v] + sh[v];
            auto it = index_.find(pack(t));
            if (it == index_.end() || it->second >= bound_idx_) continue;
            gi.emplace_back(it->second, Rational(c));
        }
        Rational b(rows_[i].front().second, rows_[j].front().second);
        b.canonicalize();
        return combine(gi, 0, rows_[j], 0, b, exp_sub(l, ej));
    }

    /// Fully reduced form against the current rows; the result is a unit
    /// multiple of the input modulo the rows, so adding it preserves the
    /// generated ideal. Empty result certifies membership up to truncation.
    ZRow reduce(QRow h) {
        QRow done;
        Rational H = 1;  // tracked element is done + H * h
        long iterations = 0;
        const long iter_cap = 1000000;
        strip_q(h, H);
        while (!h.empty()) {
            if (++iterations > iter_cap)
                throw ResourceCapError("truncated reduction iteration cap exceeded");
            const Exponent& le = mons_[h.front().first];
            int best = -1;
            std::size_t best_size = 0;
            for (std::size_t k = 0; k < rows_.size(); ++k) {
                if (!exp_divides(mons_[lead_idx(k)], le)) continue;
                if (best < 0 || rows_[k].size() < best_size) {
                    best = static_cast<int>(k);
                    best_size = rows_[k].size();
                }
            }
            if (best < 0) {
                done.emplace_back(h.front().first, Rational(H * h.front().second));
                h.erase(h.begin());
                continue;
            }
            const ZRow& g = rows_[best];
            Exponent shift = exp_sub(le, mons_[lead_idx(best)]);
            Rational b(h.front().second / g.front().second);
            h = combine(h, 1, g, 1, b, shift);
            strip_q(h, H);
        }
        // clear denominators and strip: a unit rescale
        mpz_class den_lcm = 1;
        for (const auto& [i, c] : done)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        ZRow out;
        out.reserve(done.size());
        for (const auto& [i, c] : done)
            out.emplace_back(i, mpz_class(c.get_num() * (den_lcm / c.get_den())));
        strip(out);
        return out;
    }

    static std::uint64_t pair_key(std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        return (static_cast<std::uint64_t>(i) << 32) | j;
    }

    /// Buchberger's chain criterion: the pair (i,j) is redundant when some
    /// other lead divides lcm(i,j) and both bridging pairs have already
    /// been dealt with. Sound for any semigroup ordering (it is a statement
    /// about the syzygies of the leading terms only).
    bool chain_criterion(std::size_t i, std::size_t j) const {
        Exponent l = exp_lcm(mons_[lead_idx(i)], mons_[lead_idx(j)]);
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (k == i || k == j) continue;
            if (!exp_divides(mons_[lead_idx(k)], l)) continue;
            if (pending_.count(pair_key(i, k)) || pending_.count(pair_key(j, k))) continue;
            return true;
        }
        return false;
    }

    void add_row(ZRow r) {
        std::size_t idx = rows_.size();
        rows_.push_back(std::move(r));
        for (std::size_t i = 0; i < idx; ++i) {
            Exponent l = exp_lcm(mons_[lead_idx(i)], mons_[lead_idx(idx)]);
            pairs_.push_back({i, idx, R_->weighted_degree(l)});
            pending_.insert(pair_key(i, idx));
        }
        tighten();
    }

    /// Recompute the Nakayama bound from the found leads and drop all terms
    /// above it (keeping leads, which certify staircase generators).
    void tighten() {
        std::vector<Exponent> leads;
        for (std::size_t k = 0; k < rows_.size(); ++k) leads.push_back(mons_[lead_idx(k)]);
        std::optional<long> D = max_standard_wdeg(leads, *R_);
        if (!D || *D >= bound_deg()) return;
        int nb = static_cast<int>(
            std::upper_bound(wdeg_.begin(), wdeg_.end(), *D) - wdeg_.begin());
        if (nb >= bound_idx_) return;
        bound_idx_ = nb;
        for (auto& row : rows_) {
            auto it = std::lower_bound(
                row.begin(), row.end(), bound_idx_,
                [](const ZTerm& t, int v) { return t.first < v; });
            if (it == row.begin()) ++it;  // keep the lead
            row.erase(it, row.end());
            strip(row);
        }
    }
};

/// Minimal leading exponents of <gens> with all computations confined to
/// weighted degree <= cap. Exact below the cap; see TruncIdealEngine.
inline std::vector<Exponent> truncated_ideal_leads(const std::vector<Poly>& gens,
                                                   const RingSpec& R, long cap) {
    TruncIdealEngine eng(R, cap);
    return eng.minimal_lead_exponents(gens);
}

}  // namespace detail

/// dim_C O^m / M, counted as standard monomials under the leading-term
/// staircase. Infinity detection is exact: finite iff every component's
/// staircase contains a pure power of each variable.
namespace detail {

inline ColengthResult count_staircase(const std::vector<std::vector<Exponent>>& staircase,
                                      const RingSpec& R, bool collect, long monomial_list_cap);

}  // namespace detail

inline ColengthResult colength(const SubModule& M, long monomial_list_cap = 512) {
    const RingSpec& R = *M.ring();
    int n = R.nvars();
    // Fast path for ideals without a cached basis: degree-capped bases with
    // iterative deepening. The leading ideal is exact up to the cap, so a
    // closed staircase box with corner bound inside the cap settles the
    // count without the full (possibly much more expensive) basis.
    if (M.rank() == 1 && !M.basis_cached() && !M.generators().empty()) {
        long wmax = 1;
        if (R.weights())
            for (long w : *R.weights()) wmax = std::max(wmax, w);
        long dmax = R.limits().max_total_degree * wmax;
        std::vector<Poly> polys;
        for (const auto& g : M.generators()) polys.push_back(g[0]);
        long d = 8;
        std::vector<Exponent> prev;
        int stagnant = 0;
        while (d <= dmax) {
            std::vector<Exponent> gens;
            try {
                gens = detail::truncated_ideal_leads(polys, R, d);
            } catch (const ResourceCapError&) {
                break;  // fall through to the exact full computation
            }
            bool has_one = false;
            for (const auto& e : gens)
                if (R.total_degree(e) == 0) has_one = true;
            if (has_one) return detail::count_staircase({gens}, R, true, monomial_list_cap);
            // Exact once every standard monomial of the found staircase lies
            // inside the cap: a missed lead would be a standard monomial of
            // weighted degree > d, and there is none.
            std::optional<long> top = detail::max_standard_wdeg(gens, R);
            if (!gens.empty() && top && *top <= d)
                return detail::count_staircase({gens}, R, true, monomial_list_cap);
            // Likely an infinite colength when deepening stops finding leads:
            // hand over to the exact full computation.
            if (gens == prev && ++stagnant >= 2) break;
            if (gens != prev) stagnant = 0;
            prev = std::move(gens);
            // Deepen exactly as far as the found staircase demands when the
            // box is already closed; otherwise creep upward — the engine's
            // cost climbs steeply with the cap, so overshooting is costly.
            d = top && *top > d ? *top : d + std::max(2L, d / 4);
        }
    }
    return detail::count_staircase(detail::leading_staircase(M), R, M.rank() == 1,
                                   monomial_list_cap);
}

namespace detail {

inline ColengthResult count_staircase(const std::vector<std::vector<Exponent>>& staircase,
                                      const RingSpec& R, bool collect, long monomial_list_cap) {
    int n = R.nvars();
    long total = 0;
    std::vector<Exponent> std_monomials;
    for (const auto& gens : staircase) {
        if (gens.empty()) return ColengthResult::infinite();
        // contains 1: component contributes nothing
        bool has_one = false;
        for (const auto& e : gens)
            if (R.total_degree(e) == 0) has_one = true;
        if (has_one) continue;
        std::vector<long> box = staircase_box(gens, n);
        for (int j = 0; j < n; ++j)
            if (box[j] < 0) return ColengthResult::infinite();
        long box_size = 1;
        for (int j = 0; j < n; ++j) {
            box_size *= box[j];
            if (box_size > 50000000L)
                throw ResourceCapError("staircase enumeration box too large");
        }
        // odometer over the box, skipping multiples of staircase generators
        Exponent e(n, 0);
        while (true) {
            bool standard = true;
            for (const auto& g : gens)
                if (detail::exp_divides(g, e)) {
                    standard = false;
                    break;
                }
            if (standard) {
                ++total;
                if (collect && total <= monomial_list_cap) std_monomials.push_back(e);
            }
            int j = 0;
            while (j < n && ++e[j] >= box[j]) e[j++] = 0;
            if (j == n) break;
        }
    }
    ColengthResult r = ColengthResult::of(total);
    if (collect && total <= monomial_list_cap) {
        std::sort(std_monomials.begin(), std_monomials.end(),
                  [&](const Exponent& a, const Exponent& b) { return R.mono_greater(a, b); });
        r.standard_monomials = std::move(std_monomials);
    }
    return r;
}

}  // namespace detail

/// Krull dimension of O_n / I for a proper ideal I, via the maximal
/// independent variable set of the leading ideal.
inline int krull_dim(const SubModule& I) {
    if (I.rank() != 1) throw DomainError("krull_dim expects an ideal");
    const RingSpec& R = *I.ring();
    int n = R.nvars();
    auto gens = detail::leading_staircase(I)[0];
    if (gens.empty()) return n;  // zero ideal
    std::vector<unsigned> supports;
    for (const auto& e : gens) {
        unsigned s = 0;
        for (int j = 0; j < n; ++j)
            if (e[j] > 0) s |= 1u << j;
        if (s == 0) throw DomainError("krull_dim of the unit ideal");
        supports.push_back(s);
    }
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool independent = true;
        for (unsigned s : supports)
            if ((s & ~mask) == 0) {
                independent = false;
                break;
            }
        if (independent) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

namespace detail {

/// Module term for the global engine below: component, then monomial.
struct GlobTerm {
    int comp;
    Exponent exp;
};

/// Global degrevlex: higher total degree first, reverse-lex tiebreak.
inline bool glob_exp_greater(const Exponent& a, const Exponent& b) {
    long da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

/// Position-over-term: lower components eliminate higher ones.
inline bool glob_term_greater(const GlobTerm& a, const GlobTerm& b) {
    if (a.comp != b.comp) return a.comp < b.comp;
    return glob_exp_greater(a.exp, b.exp);
}

/// Buchberger completion over the polynomial ring with the global ordering
/// above. Used for syzygy computations: the ordering is a well-order, so
/// plain division and the completion terminate, avoiding Mora's unit
/// bookkeeping entirely. Localization is flat over the polynomial ring, so
/// syzygies of polynomial generators computed here generate the syzygy
/// module over the local ring as well.
class GlobalModuleEngine {
public:
    using Row = std::vector<std::pair<GlobTerm, Rational>>;  // descending order

    explicit GlobalModuleEngine(const RingSpec& R) : R_(&R) {}

    void add_generator(const VecPoly& v) {
        Row r;
        for (int c = 0; c < v.rank(); ++c)
            for (const auto& [e, q] : v[c].terms()) r.push_back({{c, e}, q});
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) {
            return glob_term_greater(a.first, b.first);
        });
        if (r.empty()) return;
        Row red = reduce(std::move(r));
        if (!red.empty()) add_row(std::move(red));
    }

    void complete() {
        while (!pairs_.empty()) {
            std::size_t pick = 0;
            for (std::size_t k = 1; k < pairs_.size(); ++k)
                if (pairs_[k].deg < pairs_[pick].deg) pick = k;
            Pair p = pairs_[pick];
            pairs_[pick] = pairs_.back();
            pairs_.pop_back();
            pending_.erase(key(p.i, p.j));
            if (chain_criterion(p.i, p.j)) continue;
            Row h = reduce(s_poly(p.i, p.j));
            if (h.empty()) continue;
            add_row(std::move(h));
            if (rows_.size() > R_->limits().max_basis_size)
                throw ResourceCapError("syzygy basis size cap exceeded");
        }
    }

    std::vector<VecPoly> basis_as_vecpolys(const RingPtr& ring, int rank) const {
        std::vector<VecPoly> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) {
            VecPoly v(ring, rank);
            for (const auto& [t, c] : r) v[t.comp].add_term(t.exp, c);
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    struct Pair {
        std::size_t i, j;
        long deg;
    };

    const RingSpec* R_;
    std::vector<Row> rows_;
    std::vector<Pair> pairs_;
    std::unordered_set<std::uint64_t> pending_;

    static std::uint64_t key(std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        return (static_cast<std::uint64_t>(i) << 32) | j;
    }

    const GlobTerm& lead(std::size_t k) const { return rows_[k].front().first; }

    static long total_deg(const Exponent& e) {
        long d = 0;
        for (int x : e) d += x;
        return d;
    }

    /// h - b * x^shift * g with the heads (which cancel) excluded.
    static Row combine(const Row& h, std::size_t h_from, const Row& g, std::size_t g_from,
                       const Rational& b, const Exponent& shift) {
        Row out;
        out.reserve(h.size() - h_from + g.size() - g_from);
        std::size_t i = h_from, j = g_from;
        auto shifted = [&](std::size_t jj) {
            GlobTerm t = g[jj].first;
            for (std::size_t v = 0; v < shift.size(); ++v) t.exp[v] += shift[v];
            return t;
        };
        while (i < h.size() || j < g.size()) {
            if (j == g.size()) {
                out.push_back(h[i++]);
                continue;
            }
            GlobTerm gt = shifted(j);
            if (i == h.size() || glob_term_greater(gt, h[i].first)) {
                out.push_back({std::move(gt), Rational(-b * g[j].second)});
                ++j;
            } else if (glob_term_greater(h[i].first, gt)) {
                out.push_back(h[i++]);
            } else {
                Rational v = h[i].second - b * g[j].second;
                if (v != 0) out.push_back({h[i].first, std::move(v)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    /// Content strip of the working remainder; the removed unit constant is
    /// absorbed into the lazy scale so the tracked element is unchanged.
    static void strip(Row& h, Rational& H) {
        if (h.empty()) return;
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& [t, c] : h) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (scale == 1) return;
        for (auto& [t, c] : h) c *= scale;
        H /= scale;
    }

    Row s_poly(std::size_t i, std::size_t j) {
        const GlobTerm& li = lead(i);
        const GlobTerm& lj = lead(j);
        Exponent l = exp_lcm(li.exp, lj.exp);
        Row gi;
        gi.reserve(rows_[i].size());
        Exponent si = exp_sub(l, li.exp);
        for (const auto& [t, c] : rows_[i]) {
            GlobTerm nt = t;
            for (std::size_t v = 0; v < si.size(); ++v) nt.exp[v] += si[v];
            gi.push_back({std::move(nt), c});
        }
        Rational b = rows_[i].front().second / rows_[j].front().second;
        return combine(gi, 1, rows_[j], 1, b, exp_sub(l, lj.exp));
    }

    /// Fully reduced form: every term of the result is irreducible. The
    /// result is the input minus a module combination of the rows, up to
    /// one unit constant (lazy scale + final denominator clearing).
    Row reduce(Row h) {
        Row done;
        Rational H = 1;  // tracked element is done + H * h
        long iterations = 0;
        strip(h, H);
        while (!h.empty()) {
            if (++iterations > 1000000)
                throw ResourceCapError("syzygy reduction iteration cap exceeded");
            const GlobTerm& lt = h.front().first;
            int best = -1;
            std::size_t best_size = 0;
            for (std::size_t k = 0; k < rows_.size(); ++k) {
                const GlobTerm& lk = lead(k);
                if (lk.comp != lt.comp || !exp_divides(lk.exp, lt.exp)) continue;
                if (best < 0 || rows_[k].size() < best_size) {
                    best = static_cast<int>(k);
                    best_size = rows_[k].size();
                }
            }
            if (best < 0) {
                done.push_back({lt, Rational(H * h.front().second)});
                h.erase(h.begin());
                continue;
            }
            Rational b = h.front().second / rows_[best].front().second;
            h = combine(h, 1, rows_[best], 1, b, exp_sub(lt.exp, lead(best).exp));
            strip(h, H);
        }
        // clear denominators: a unit constant rescale
        mpz_class den_lcm = 1;
        for (const auto& [t, c] : done)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        if (den_lcm != 1)
            for (auto& [t, c] : done) c *= Rational(den_lcm);
        Rational unit = 1;
        strip(done, unit);
        return done;
    }

    /// Buchberger's chain criterion; a statement about leading-term
    /// syzygies only, hence valid for any module ordering.
    bool chain_criterion(std::size_t i, std::size_t j) const {
        const GlobTerm& li = lead(i);
        Exponent l = exp_lcm(li.exp, lead(j).exp);
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (k == i || k == j) continue;
            const GlobTerm& lk = lead(k);
            if (lk.comp != li.comp || !exp_divides(lk.exp, l)) continue;
            if (pending_.count(key(i, k)) || pending_.count(key(j, k))) continue;
            return true;
        }
        return false;
    }

    void add_row(Row r) {
        std::size_t idx = rows_.size();
        rows_.push_back(std::move(r));
        const GlobTerm& lj = lead(idx);
        for (std::size_t i = 0; i < idx; ++i) {
            const GlobTerm& li = lead(i);
            if (li.comp != lj.comp) continue;
            pairs_.push_back({i, idx, total_deg(exp_lcm(li.exp, lj.exp))});
            pending_.insert(key(i, idx));
        }
    }
};

}  // namespace detail

/// Generators of { (g_1,...,g_s) : sum g_i u_i = 0 } where u_i are the
/// generators of M, via a basis of the graph module with the components of
/// M eliminating the syzygy components (computed with a global ordering;
/// flatness carries the result to the local ring).
inline SubModule syzygies(const SubModule& M) {
    const RingPtr& R = M.ring();
    int m = M.rank();
    int s = static_cast<int>(M.generators().size());
    if (s == 0) return SubModule::zero(R, 1);
    detail::GlobalModuleEngine eng(*R);
    for (int i = 0; i < s; ++i) {
        VecPoly v(R, m + s);
        for (int c = 0; c < m; ++c) v[c] = M.generators()[i][c];
        v[m + i] = Poly(R, Rational(1));
        eng.add_generator(v);
    }
    eng.complete();
    auto basis = eng.basis_as_vecpolys(R, m + s);
    std::vector<VecPoly> syz;
    for (const auto& b : basis) {
        bool in_tail = true;
        for (int c = 0; c < m; ++c)
            if (!b[c].is_zero()) {
                in_tail = false;
                break;
            }
        if (!in_tail) continue;
        VecPoly v(R, s);
        for (int i = 0; i < s; ++i) v[i] = b[m + i];
        v.normalize_content();
        syz.push_back(std::move(v));
    }
    return SubModule(R, s, std::move(syz));
}

/// { g in O^i : A*g in T }, where A has T.rank() rows and i columns.
/// Computed from the syzygies of [columns of A | generators of T],
/// projected onto the leading block.
inline SubModule module_preimage(const PolyMatrix& A, const SubModule& T) {
    if (A.rows() != T.rank()) throw DomainError("module_preimage: row count must match rank");
    const RingPtr& R = T.ring();
    int i = A.cols();
    std::vector<VecPoly> gens;
    for (int c = 0; c < i; ++c) gens.push_back(VecPoly(A.column(c)));
    for (const auto& t : T.generators()) gens.push_back(t);
    SubModule concat(R, T.rank(), std::move(gens));
    SubModule syz = syzygies(concat);
    std::vector<VecPoly> pre;
    for (const auto& v : syz.generators()) {
        VecPoly g(R, i);
        for (int c = 0; c < i; ++c) g[c] = v[c];
        if (g.is_zero()) continue;
        g.normalize_content();
        pre.push_back(std::move(g));
    }
    return SubModule(R, i, std::move(pre));
}

/// The colon ideal (I : f) = { g : g*f in I }.
inline SubModule ideal_quotient(const SubModule& I, const Poly& f) {
    if (I.rank() != 1) throw DomainError("ideal_quotient expects an ideal");
    const RingPtr& R = I.ring();
    if (f.is_zero()) return SubModule::ideal(R, {Poly(R, Rational(1))});
    std::vector<VecPoly> gens;
    gens.push_back(to_vecpoly(f));
    for (const auto& g : I.generators()) gens.push_back(g);
    SubModule concat(R, 1, std::move(gens));
    SubModule syz = syzygies(concat);
    std::vector<Poly> quot;
    for (const auto& v : syz.generators())
        if (!v[0].is_zero()) quot.push_back(v[0]);
    return SubModule::ideal(R, quot);
}

enum class ModuleRelation { equal, first_in_second, second_in_first, incomparable };

inline ModuleRelation module_equal(const SubModule& M1, const SubModule& M2) {
    if (M1.rank() != M2.rank()) throw DomainError("module comparison rank mismatch");
    auto contained = [](const SubModule& A, const SubModule& B) {
        for (const auto& g : A.generators())
            if (!B.contains(g)) return false;
        return true;
    };
    bool ab = contained(M1, M2), ba = contained(M2, M1);
    if (ab && ba) return ModuleRelation::equal;
    if (ab) return ModuleRelation::first_in_second;
    if (ba) return ModuleRelation::second_in_first;
    return ModuleRelation::incomparable;
}

/// r_f(I): least r >= 1 with f^r in I; nullopt means infinite. When
/// colength(I) is finite the Nakayama bound colength+1 caps the search;
/// otherwise an explicit cap is required.
inline std::optional<long> power_index(const Poly& f, const SubModule& I,
                                       std::optional<long> explicit_cap = std::nullopt) {
    if (I.rank() != 1) throw DomainError("power_index expects an ideal");
    if (f.is_unit()) return I.contains(Poly(f.ring(), Rational(1))) ? std::optional<long>(1)
                                                                    : std::nullopt;
    long bound;
    ColengthResult col = colength(I);
    if (col.finite) {
        bound = col.value + 1;
    } else if (explicit_cap) {
        bound = *explicit_cap;
    } else {
        throw DomainError("power_index: infinite colength requires an explicit cap");
    }
    Poly fp = f;
    for (long r = 1; r <= bound; ++r) {
        if (I.contains(fp)) return r;
        fp *= f;
        fp.normalize_content();
    }
    return std::nullopt;
}

/// Nakayama-minimal generating subset: drops every generator lying in the
/// module spanned by the remaining ones plus m*M.
inline SubModule minimal_generators(const SubModule& M) {
    const RingPtr& R = M.ring();
    int n = R->nvars();
    std::vector<VecPoly> gens;
    for (const auto& g : M.generators())
        if (!g.is_zero()) gens.push_back(g);
    std::vector<VecPoly> mM;  // m * M over the original generators
    for (const auto& g : gens)
        for (int j = 0; j < n; ++j) {
            Exponent e(n, 0);
            e[j] = 1;
            mM.push_back(g.times_term(Rational(1), e));
        }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < gens.size(); ++k) {
            std::vector<VecPoly> rest = mM;
            for (std::size_t l = 0; l < gens.size(); ++l)
                if (l != k) rest.push_back(gens[l]);
            SubModule N(R, M.rank(), std::move(rest));
            if (N.contains(gens[k])) {
                gens.erase(gens.begin() + k);
                changed = true;
                break;
            }
        }
    }
    return SubModule(R, M.rank(), std::move(gens));
}

}  // namespace brsing
