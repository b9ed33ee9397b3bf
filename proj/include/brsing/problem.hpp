#pragma once

#include <fstream>
#include <sstream>

#include "derlog.hpp"
#include "parser.hpp"

namespace brsing {

/// Parsed problem file: one ring, at most one variety, at most one f.
struct ProblemFile {
    RingPtr ring;
    std::optional<VarietySpec> variety;
    std::optional<Poly> f;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

inline VarietyKind parse_kind(const std::string& s, std::size_t line_no) {
    if (s == "general") return VarietyKind::general;
    if (s == "wh_hypersurface") return VarietyKind::wh_hypersurface;
    if (s == "wh_icis") return VarietyKind::wh_icis;
    if (s == "linear_subspace") return VarietyKind::linear_subspace;
    if (s == "origin") return VarietyKind::origin;
    if (s == "ambient") return VarietyKind::ambient;
    throw ParseError("unknown variety kind '" + s + "'", line_no);
}

}  // namespace detail

inline ProblemFile parse_problem(std::istream& in, EngineLimits limits = {}) {
    std::vector<std::string> vars;
    std::optional<std::vector<long>> weights;
    std::optional<VarietyKind> kind;
    std::vector<std::string> equation_texts;
    std::optional<std::string> f_text;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        std::size_t sp = line.find_first_of(" \t=");
        std::string key = sp == std::string::npos ? line : line.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : detail::trim(line.substr(sp));
        if (!rest.empty() && rest[0] == '=') rest = detail::trim(rest.substr(1));

        if (key == "ring") {
            if (!vars.empty()) throw ParseError("duplicate ring declaration", line_no);
            vars = detail::split_commas(rest);
            if (vars.empty() || vars[0].empty())
                throw ParseError("ring needs variable names", line_no);
        } else if (key == "weights") {
            if (vars.empty()) throw ParseError("weights before ring", line_no);
            if (weights) throw ParseError("duplicate weights declaration", line_no);
            std::vector<long> w;
            for (const auto& t : detail::split_commas(rest)) {
                try {
                    w.push_back(std::stol(t));
                } catch (const std::exception&) {
                    throw ParseError("bad weight '" + t + "'", line_no);
                }
            }
            weights = std::move(w);
        } else if (key == "variety") {
            if (kind) throw ParseError("duplicate variety declaration", line_no);
            kind = detail::parse_kind(rest, line_no);
        } else if (key == "f") {
            if (f_text) throw ParseError("duplicate f declaration", line_no);
            if (rest.empty()) throw ParseError("empty f definition", line_no);
            f_text = rest;
        } else if (key.size() >= 2 && key[0] == 'h') {
            if (!kind) throw ParseError("equation before variety declaration", line_no);
            std::size_t idx;
            try {
                idx = std::stoul(key.substr(1));
            } catch (const std::exception&) {
                throw ParseError("unknown key '" + key + "'", line_no);
            }
            if (idx != equation_texts.size() + 1)
                throw ParseError("equations must be numbered consecutively from h1", line_no);
            if (rest.empty()) throw ParseError("empty equation", line_no);
            equation_texts.push_back(rest);
        } else {
            throw ParseError("unknown key '" + key + "'", line_no);
        }
    }
    if (vars.empty()) throw ParseError("missing ring declaration", line_no);

    ProblemFile pf;
    pf.ring = make_ring(vars, weights, limits);
    if (kind) {
        VarietySpec X;
        X.ring = pf.ring;
        X.kind = *kind;
        X.weights_claim = weights;
        for (const auto& t : equation_texts) X.equations.push_back(parse_poly(pf.ring, t));
        if (X.equations.empty() && *kind != VarietyKind::ambient && *kind != VarietyKind::origin)
            throw ParseError("variety of this kind needs equations", line_no);
        pf.variety = std::move(X);
    } else if (!equation_texts.empty()) {
        throw ParseError("equations without a variety declaration", line_no);
    }
    if (f_text) pf.f = parse_poly(pf.ring, *f_text);
    return pf;
}

inline ProblemFile parse_problem_file(const std::string& path, EngineLimits limits = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file '" + path + "'", 0);
    return parse_problem(in, limits);
}

}  // namespace brsing
