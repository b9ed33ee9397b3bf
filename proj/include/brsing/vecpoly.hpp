#pragma once

#include "matrix.hpp"
#include "poly.hpp"

namespace brsing {

/// Leading term of a module element under the position-over-term local
/// ordering: the first nonzero component wins, then the component's
/// leading monomial.
struct LeadTerm {
    int comp;
    Exponent exp;
    Rational coeff;
};

/// Element of a free module O^m over the ambient local ring.
class VecPoly {
public:
    VecPoly(RingPtr ring, int rank)
        : ring_(std::move(ring)), entries_(static_cast<std::size_t>(rank), Poly(ring_)) {
        if (rank < 1) throw DomainError("module rank must be positive");
    }

    explicit VecPoly(std::vector<Poly> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw DomainError("module rank must be positive");
        ring_ = entries_.front().ring();
    }

    static VecPoly unit(RingPtr ring, int rank, int comp, Poly value) {
        VecPoly v(std::move(ring), rank);
        v.entries_[comp] = std::move(value);
        return v;
    }

    const RingPtr& ring() const { return ring_; }
    int rank() const { return static_cast<int>(entries_.size()); }
    const Poly& operator[](int i) const { return entries_[i]; }
    Poly& operator[](int i) { return entries_[i]; }
    const std::vector<Poly>& entries() const { return entries_; }

    bool is_zero() const {
        for (const auto& p : entries_)
            if (!p.is_zero()) return false;
        return true;
    }

    LeadTerm lead() const {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (!entries_[i].is_zero())
                return {static_cast<int>(i), entries_[i].leading_exponent(),
                        entries_[i].leading_coefficient()};
        throw DomainError("leading term of zero module element");
    }

    VecPoly& operator+=(const VecPoly& o) {
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
        return *this;
    }
    VecPoly& operator-=(const VecPoly& o) {
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
        return *this;
    }
    friend VecPoly operator+(VecPoly a, const VecPoly& b) { return a += b; }
    friend VecPoly operator-(VecPoly a, const VecPoly& b) { return a -= b; }

    VecPoly times_term(const Rational& c, const Exponent& e) const {
        VecPoly r(ring_, rank());
        for (std::size_t i = 0; i < entries_.size(); ++i)
            r.entries_[i] = entries_[i].times_term(c, e);
        return r;
    }

    friend VecPoly operator*(const Poly& p, const VecPoly& v) {
        VecPoly r(v.ring_, v.rank());
        for (std::size_t i = 0; i < v.entries_.size(); ++i) r.entries_[i] = p * v.entries_[i];
        return r;
    }

    bool operator==(const VecPoly& o) const { return entries_ == o.entries_; }

    long max_weighted_degree() const {
        long m = 0;
        for (const auto& p : entries_) m = std::max(m, p.max_weighted_degree());
        return m;
    }

    long max_total_degree() const {
        long m = 0;
        for (const auto& p : entries_) m = std::max(m, p.max_total_degree());
        return m;
    }

    /// Drop all terms of weighted degree > d; with keep_lead, the leading
    /// term is restored should it fall above the bound.
    void truncate_above_wdeg(long d, bool keep_lead = false) {
        if (is_zero()) return;
        LeadTerm lt = lead();
        for (auto& p : entries_) p.truncate_above_wdeg(d);
        if (keep_lead && ring_->weighted_degree(lt.exp) > d)
            entries_[lt.comp].add_term(lt.exp, lt.coeff);
    }

    void normalize_content() {
        // scale the whole vector by one unit constant
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& p : entries_)
            for (const auto& [e, c] : p.terms()) {
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
            }
        if (num_gcd == 0) return;
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (lead().coeff * scale < 0) scale = -scale;
        for (auto& p : entries_) p *= scale;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ", ";
            s += entries_[i].to_string();
        }
        return s + ")";
    }

private:
    RingPtr ring_;
    std::vector<Poly> entries_;
};

inline VecPoly to_vecpoly(const Poly& p) { return VecPoly({p}); }

/// delta(f) for the vector field delta = (d_1,...,d_n).
inline Poly apply_vector_field(const VecPoly& delta, const Poly& f) {
    Poly r(f.ring());
    for (int i = 0; i < delta.rank(); ++i) {
        if (!delta[i].is_zero()) r += delta[i] * f.derivative(i);
    }
    return r;
}

}  // namespace brsing
