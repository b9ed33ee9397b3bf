#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "ring.hpp"

namespace brsing {

namespace detail {
/// Map comparator putting the largest monomial (local ordering) first.
struct MonoGreater {
    const RingSpec* ring = nullptr;
    bool operator()(const Exponent& a, const Exponent& b) const {
        return ring->mono_greater(a, b);
    }
};
}  // namespace detail

/// Exact multivariate polynomial over Q. Terms are kept sorted by the
/// ring's local ordering, largest first; no zero coefficient is stored,
/// so equal polynomials have identical term maps.
class Poly {
public:
    using TermMap = std::map<Exponent, Rational, detail::MonoGreater>;

    explicit Poly(RingPtr ring)
        : ring_(std::move(ring)), terms_(detail::MonoGreater{ring_.get()}) {}

    Poly(RingPtr ring, const Rational& c) : Poly(std::move(ring)) {
        if (c != 0) terms_.emplace(Exponent(ring_->nvars(), 0), c);
    }

    static Poly monomial(RingPtr ring, Exponent e, Rational c = 1) {
        Poly p(std::move(ring));
        if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
        return p;
    }

    static Poly variable(RingPtr ring, int i, Rational c = 1) {
        Exponent e(ring->nvars(), 0);
        e[i] = 1;
        return monomial(std::move(ring), std::move(e), std::move(c));
    }

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && ring_->total_degree(terms_.begin()->first) == 0);
    }

    Rational constant_term() const {
        Exponent zero(ring_->nvars(), 0);
        auto it = terms_.find(zero);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Unit in the local ring: nonzero constant term.
    bool is_unit() const { return constant_term() != 0; }

    const Exponent& leading_exponent() const {
        if (terms_.empty()) throw DomainError("leading term of zero polynomial");
        return terms_.begin()->first;
    }
    const Rational& leading_coefficient() const {
        if (terms_.empty()) throw DomainError("leading term of zero polynomial");
        return terms_.begin()->second;
    }

    void add_term(const Exponent& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Remove every term of weighted degree strictly greater than d. The
    /// term map is ordered by the local ordering, so weighted degrees are
    /// non-decreasing along it and the victims form a suffix.
    void truncate_above_wdeg(long d) {
        auto it = terms_.begin();
        while (it != terms_.end() && ring_->weighted_degree(it->first) <= d) ++it;
        terms_.erase(it, terms_.end());
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    Poly operator-() const {
        Poly r(ring_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    Poly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [e, v] : terms_) v *= c;
        }
        return *this;
    }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

    /// Multiply by the term c * x^e. The ordering is multiplicative, so the
    /// relative order of terms is preserved.
    Poly times_term(const Rational& c, const Exponent& e) const {
        Poly r(ring_);
        if (c == 0) return r;
        auto hint = r.terms_.end();
        for (const auto& [me, mc] : terms_) {
            Exponent ne = me;
            for (std::size_t i = 0; i < ne.size(); ++i) ne[i] += e[i];
            hint = r.terms_.emplace_hint(hint, std::move(ne), mc * c);
        }
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.ring_);
        if (a.terms_.size() > b.terms_.size()) {
            for (const auto& [e, c] : b.terms_) r += a.times_term(c, e);
        } else {
            for (const auto& [e, c] : a.terms_) r += b.times_term(c, e);
        }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(long k) const {
        if (k < 0) throw DomainError("negative polynomial power");
        Poly r(ring_, Rational(1));
        Poly base = *this;
        while (k > 0) {
            if (k & 1) r *= base;
            base = (k >>= 1) > 0 ? base * base : base;
        }
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(int var) const {
        Poly r(ring_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent ne = e;
            ne[var] -= 1;
            r.add_term(ne, c * e[var]);
        }
        return r;
    }

    /// Substitute images[i] for variable i; images live in target.
    Poly substitute(const RingPtr& target, const std::vector<Poly>& images) const {
        if (static_cast<int>(images.size()) != ring_->nvars())
            throw DomainError("substitute: one image per variable required");
        // cached powers per variable
        std::vector<std::vector<Poly>> pow_cache(images.size(), {Poly(target, Rational(1))});
        auto power = [&](std::size_t i, int k) -> const Poly& {
            auto& cache = pow_cache[i];
            while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[i]);
            return cache[k];
        };
        Poly r(target);
        for (const auto& [e, c] : terms_) {
            Poly t(target, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t *= power(i, e[i]);
            r += t;
        }
        return r;
    }

    /// Minimum total degree of a term (the order of the germ).
    long order() const {
        if (terms_.empty()) throw DomainError("order of zero polynomial");
        long m = -1;
        for (const auto& [e, c] : terms_) {
            long d = ring_->total_degree(e);
            if (m < 0 || d < m) m = d;
        }
        return m;
    }

    long max_total_degree() const {
        long m = 0;
        for (const auto& [e, c] : terms_) m = std::max(m, ring_->total_degree(e));
        return m;
    }

    long max_weighted_degree() const {
        long m = 0;
        for (const auto& [e, c] : terms_) m = std::max(m, ring_->weighted_degree(e));
        return m;
    }

    std::pair<long, long> weighted_degree_range(const std::vector<long>& w) const {
        if (terms_.empty()) throw DomainError("weighted degree of zero polynomial");
        long lo = 0, hi = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            long d = ring_->weighted_degree(e, w);
            if (first) {
                lo = hi = d;
                first = false;
            } else {
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
        }
        return {lo, hi};
    }

    bool is_weighted_homogeneous(const std::vector<long>& w) const {
        auto [lo, hi] = weighted_degree_range(w);
        return lo == hi;
    }

    /// Terms of minimal weighted degree (the principal part).
    Poly principal_part(const std::vector<long>& w) const {
        if (terms_.empty()) return *this;
        long lo = weighted_degree_range(w).first;
        Poly r(ring_);
        for (const auto& [e, c] : terms_)
            if (ring_->weighted_degree(e, w) == lo) r.add_term(e, c);
        return r;
    }

    /// Scale by a nonzero rational so that coefficients become coprime
    /// integers with positive leading coefficient. A unit multiple, so the
    /// generated ideal/module is unchanged.
    void normalize_content() {
        if (terms_.empty()) return;
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& [e, c] : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (leading_coefficient() * scale < 0) scale = -scale;
        *this *= scale;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool has_vars = ring_->total_degree(e) > 0;
            if (!has_vars || a != 1) {
                os << a.get_str();
                if (has_vars) os << "*";
            }
            bool first_var = true;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!first_var) os << "*";
                first_var = false;
                os << ring_->vars()[i];
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    RingPtr ring_;
    TermMap terms_;
};

/// theta_w(f) = sum_i w_i x_i df/dx_i.
inline Poly euler_apply(const Poly& f, const std::vector<long>& w) {
    const RingPtr& R = f.ring();
    if (static_cast<int>(w.size()) != R->nvars())
        throw DomainError("euler_apply: weight length mismatch");
    Poly r(R);
    for (const auto& [e, c] : f.terms()) {
        long d = R->weighted_degree(e, w);
        r.add_term(e, c * d);
    }
    return r;
}

inline std::pair<long, long> weighted_degree(const Poly& f, const std::vector<long>& w) {
    return f.weighted_degree_range(w);
}

inline bool is_weighted_homogeneous(const Poly& f, const std::vector<long>& w) {
    return f.is_weighted_homogeneous(w);
}

/// ord(f) for a germ vanishing at 0; rejects nonvanishing constants.
inline long germ_order(const Poly& f) {
    if (f.is_zero()) throw DomainError("ord of zero polynomial");
    if (f.constant_term() != 0) throw DomainError("ord: germ must vanish at the origin");
    return f.order();
}

}  // namespace brsing
