#pragma once

#include <sstream>

#include "problem.hpp"

namespace brsing {

/// Emit a self-contained Singular script computing the same quantities as
/// the tool, for manual cross-validation. The script is never executed by
/// this artifact.
inline std::string emit_singular_script(const ProblemFile& pf) {
    const RingSpec& R = *pf.ring;
    int n = R.nvars();
    std::ostringstream os;
    os << "// generated cross-validation script; run with: Singular <file>\n";
    os << "ring r = 0, (";
    for (int j = 0; j < n; ++j) os << (j ? "," : "") << R.vars()[j];
    os << "), ";
    if (R.has_weights()) {
        os << "ws(";
        for (int j = 0; j < n; ++j) os << (j ? "," : "") << (*R.weights())[j];
        os << ");\n";
    } else {
        os << "ds;\n";
    }

    if (pf.f) os << "poly f = " << pf.f->to_string() << ";\n";

    if (pf.variety && !pf.variety->equations.empty()) {
        const auto& eqs = pf.variety->equations;
        int m = static_cast<int>(eqs.size());
        os << "ideal h = ";
        for (int k = 0; k < m; ++k) os << (k ? ", " : "") << eqs[k].to_string();
        os << ";\n";
        // the m x (n + m^2) matrix whose syzygies project to Theta_X
        os << "matrix Dh[" << m << "][" << n + m * m << "];\n";
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < n; ++j)
                os << "Dh[" << k + 1 << "," << j + 1 << "] = diff(h[" << k + 1 << "], "
                   << R.vars()[j] << ");\n";
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k)
                os << "Dh[" << i + 1 << "," << n + i * m + k + 1 << "] = h[" << k + 1 << "];\n";
        os << "module S = syz(module(Dh));\n";
        os << "// Theta_X = the first " << n << " rows of S\n";
        os << "module Theta = submat(S, 1.." << n << ", 1..ncols(S));\n";
        os << "print(Theta);\n";
        if (pf.f) {
            os << "// J_X(f) and the Bruce-Roberts numbers\n";
            os << "ideal JX;\n";
            os << "int c;\n";
            os << "for (c = 1; c <= ncols(Theta); c++) {\n";
            os << "  poly d = 0;\n";
            for (int j = 0; j < n; ++j)
                os << "  d = d + Theta[" << j + 1 << ", c] * diff(f, " << R.vars()[j] << ");\n";
            os << "  JX = JX, d;\n";
            os << "}\n";
            os << "JX = simplify(JX, 2);\n";
            os << "\"mu_X(f) =\", vdim(std(JX));\n";
            os << "\"tau_X(f) =\", vdim(std(JX + ideal(f)));\n";
        }
    }

    if (pf.f) {
        os << "\"mu(f) =\", vdim(std(jacob(f)));\n";
    }
    return os.str();
}

}  // namespace brsing
