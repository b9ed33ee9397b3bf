#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace brsing {

using Rational = mpq_class;
using Exponent = std::vector<int>;

/// Thrown when a degree or basis-size guard trips. Never a wrong answer.
struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a stated hypothesis of an operation fails its machine check.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input outside any hypothesis framework (zero polynomial, rank
/// mismatch, unit ideal where a proper one is required, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

/// Guards for the standard-basis engine. Exceeding either aborts the
/// computation with ResourceCapError.
struct EngineLimits {
    long max_total_degree = 64;
    std::size_t max_basis_size = 5000;
};

/// Ambient local ring: variable names, optional positive weights and the
/// local monomial ordering (weighted negative-degree reverse-lexicographic).
/// 1 is the largest monomial.
class RingSpec {
public:
    RingSpec(std::vector<std::string> vars,
             std::optional<std::vector<long>> weights = std::nullopt,
             EngineLimits limits = {})
        : vars_(std::move(vars)), weights_(std::move(weights)), limits_(limits) {
        if (vars_.empty()) throw DomainError("ring needs at least one variable");
        if (weights_) {
            if (weights_->size() != vars_.size())
                throw DomainError("weight vector length differs from variable count");
            for (long w : *weights_)
                if (w < 1) throw DomainError("weights must be >= 1");
        }
    }

    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }
    bool has_weights() const { return weights_.has_value(); }
    const std::optional<std::vector<long>>& weights() const { return weights_; }
    const EngineLimits& limits() const { return limits_; }
    void set_limits(EngineLimits l) { limits_ = l; }

    int var_index(std::string_view name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return static_cast<int>(i);
        return -1;
    }

    long total_degree(const Exponent& e) const {
        long d = 0;
        for (int x : e) d += x;
        return d;
    }

    /// Degree used by the ordering: w-weighted when weights are present.
    long weighted_degree(const Exponent& e) const {
        if (!weights_) return total_degree(e);
        long d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += (*weights_)[i] * e[i];
        return d;
    }

    long weighted_degree(const Exponent& e, const std::vector<long>& w) const {
        long d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += w[i] * e[i];
        return d;
    }

    /// a > b in the local ordering: lower weighted degree wins, reverse-lex
    /// breaks ties (the monomial whose last differing exponent is smaller
    /// is the larger one).
    bool mono_greater(const Exponent& a, const Exponent& b) const {
        long da = weighted_degree(a), db = weighted_degree(b);
        if (da != db) return da < db;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }

private:
    std::vector<std::string> vars_;
    std::optional<std::vector<long>> weights_;
    EngineLimits limits_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

inline RingPtr make_ring(std::vector<std::string> vars,
                         std::optional<std::vector<long>> weights = std::nullopt,
                         EngineLimits limits = {}) {
    return std::make_shared<const RingSpec>(std::move(vars), std::move(weights), limits);
}

}  // namespace brsing
