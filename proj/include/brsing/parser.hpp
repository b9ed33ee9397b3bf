#pragma once

#include <cctype>

#include "poly.hpp"

namespace brsing {

/// Recursive-descent parser for the expression grammar used by problem
/// files: +, -, *, ^, parentheses, integer or rational literals (a/b),
/// and declared variable names.
class PolyParser {
public:
    PolyParser(RingPtr ring, std::string_view text)
        : ring_(std::move(ring)), text_(text), pos_(0) {}

    Poly parse() {
        Poly p = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    Poly expression() {
        skip_ws();
        bool neg = false;
        while (peek() == '+' || peek() == '-') {
            if (take() == '-') neg = !neg;
            skip_ws();
        }
        Poly p = term();
        if (neg) p = -p;
        skip_ws();
        while (peek() == '+' || peek() == '-') {
            char op = take();
            Poly q = term();
            if (op == '+')
                p += q;
            else
                p -= q;
            skip_ws();
        }
        return p;
    }

    Poly term() {
        Poly p = factor();
        skip_ws();
        while (peek() == '*') {
            take();
            p *= factor();
            skip_ws();
        }
        return p;
    }

    Poly factor() {
        Poly base = atom();
        skip_ws();
        if (peek() == '^') {
            take();
            skip_ws();
            long k = integer("exponent");
            base = base.pow(k);
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            take();
            Poly p = expression();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            take();
            return p;
        }
        if (c == '-') {
            take();
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
        fail("expected a number, variable or '('");
    }

    Poly number() {
        std::size_t start = pos_;
        long num = integer("number");
        if (peek() == '/') {
            take();
            skip_ws();
            long den = integer("denominator");
            if (den == 0) fail_at("division by zero", start);
            Rational q(num, den);
            q.canonicalize();
            return Poly(ring_, q);
        }
        return Poly(ring_, Rational(num));
    }

    Poly variable() {
        std::size_t start = pos_;
        std::string name;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            name += text_[pos_++];
        int i = ring_->var_index(name);
        if (i < 0) fail_at("unknown variable '" + name + "'", start);
        return Poly::variable(ring_, i);
    }

    long integer(const char* what) {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail(std::string("expected ") + what);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_++] - '0');
            if (v > 1000000000L) fail("integer literal too large");
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return text_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const {
        throw ParseError(msg, pos);
    }

    RingPtr ring_;
    std::string_view text_;
    std::size_t pos_;
};

inline Poly parse_poly(const RingPtr& ring, std::string_view text) {
    return PolyParser(ring, text).parse();
}

}  // namespace brsing
