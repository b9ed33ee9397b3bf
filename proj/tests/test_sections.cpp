#include <catch2/catch_amalgamated.hpp>

#include "brsing/brsing.hpp"
#include "oracles.hpp"

using namespace brsing;

static RingPtr r3() { return make_ring({"x", "y", "z"}); }
static RingPtr r4() { return make_ring({"x", "y", "z", "t"}); }

TEST_CASE("linear sections and pullbacks") {
    RingPtr R = r3();
    Poly f = parse_poly(R, "x + y + z");
    SECTION("p(x,y) = (x, y, 2x + 3y)") {
        LinearSection p = LinearSection::make(R, 2, {{Rational(2), Rational(3)}});
        CHECK(pullback(f, p) == parse_poly(p.target, "3*x + 4*y"));
    }
    SECTION("identity section") {
        LinearSection p = LinearSection::identity(R);
        CHECK(pullback(f, p) == f);
        CHECK(pullback(parse_poly(R, "x*y*z"), p) == parse_poly(R, "x*y*z"));
    }
    SECTION("diagonal line") {
        LinearSection p = LinearSection::make(R, 1, {{Rational(1)}, {Rational(1)}});
        CHECK(pullback(parse_poly(R, "x*y*z"), p) == parse_poly(p.target, "x^3"));
    }
    SECTION("dimension guards") {
        CHECK_THROWS_AS(LinearSection::make(R, 0, {}), DomainError);
        CHECK_THROWS_AS(LinearSection::make(R, 2, {}), DomainError);
    }
}

TEST_CASE("pullback varieties re-derive their kind") {
    RingPtr R = r3();
    SECTION("normal crossings pulled back to three plane lines") {
        VarietySpec X{R, {parse_poly(R, "x*y*z")}, std::nullopt, VarietyKind::general, false};
        LinearSection p = LinearSection::make(R, 2, {{Rational(2), Rational(3)}});
        DerivedVariety dv = pullback_variety(X, p);
        CHECK(dv.spec.kind == VarietyKind::wh_hypersurface);
        CHECK(dv.reduced_known);
        CHECK(dv.spec.equations[0] == parse_poly(p.target, "x*y*(2*x + 3*y)"));
    }
    SECTION("ambient stays ambient") {
        VarietySpec X{R, {}, std::nullopt, VarietyKind::ambient, false};
        LinearSection p = LinearSection::make(R, 1, {{Rational(1)}, {Rational(2)}});
        CHECK(pullback_variety(X, p).spec.kind == VarietyKind::ambient);
    }
    SECTION("generic plane section of the quadric is still a wh hypersurface") {
        VarietySpec X{R, {parse_poly(R, "x^2 + y^2 + z^2")}, std::vector<long>{1, 1, 1},
                      VarietyKind::wh_hypersurface, false};
        LinearSection p = LinearSection::make(R, 2, {{Rational(1), Rational(2)}});
        DerivedVariety dv = pullback_variety(X, p);
        CHECK(dv.spec.kind == VarietyKind::wh_hypersurface);
        // the pullback conic has an isolated (Morse) singularity
        CHECK(milnor(dv.spec.equations[0]) == ColengthResult::of(1));
    }
}

TEST_CASE("mu* sequences of hypersurface singularities") {
    SamplingConfig cfg;
    SECTION("the four-variable example") {
        RingPtr R = r4();
        MuStar ms = mu_star(parse_poly(R, "x^3 + x*y^4 + y^3*z + t^3 + y*z^5"), cfg);
        CHECK(ms.values == std::vector<long>{60, 12, 4, 2, 1});
        CHECK(ms.stable);
    }
    SECTION("Morse point") {
        RingPtr R = r3();
        MuStar ms = mu_star(parse_poly(R, "x^2 + y^2 + z^2"), cfg);
        CHECK(ms.values == std::vector<long>{1, 1, 1, 1});
        CHECK(ms.stable);
    }
    SECTION("Fermat cubic, with a fixed-section oracle for mu^(2)") {
        RingPtr R = r3();
        MuStar ms = mu_star(parse_poly(R, "x^3 + y^3 + z^3"), cfg);
        CHECK(ms.values == std::vector<long>{8, 4, 2, 1});
        // fixed generic plane section: substitute z = x + 2y, then the
        // Macaulay-matrix oracle on the Jacobian ideal downstairs
        RingPtr R2 = make_ring({"x", "y"});
        Poly g = parse_poly(R2, "x^3 + y^3 + (x + 2*y)^3");
        std::vector<Poly> jac = {g.derivative(0), g.derivative(1)};
        auto oracle = oracles::macaulay_colength(jac);
        REQUIRE(oracle.has_value());
        CHECK(*oracle == 4);
    }
}

TEST_CASE("mu* sequences of ICIS") {
    SamplingConfig cfg;
    SECTION("quadric") {
        RingPtr R = r3();
        MuStarIcis ms = mu_star_icis({parse_poly(R, "x^2 + y^2 + z^2")}, cfg);
        CHECK(ms.values == std::vector<long>{1, 1, 1, 1});
        CHECK(ms.monotone);
    }
    SECTION("the nine-line space curve") {
        RingPtr R = r3();
        MuStarIcis ms =
            mu_star_icis({parse_poly(R, "x^3 + y^3 + z^3"), parse_poly(R, "x*y*z")}, cfg);
        // mu^(2) = mu of the curve = 28; mu^(1) = (points of a generic plane
        // slice, i.e. the (3,3) Bezout number 9) - 1 = 8
        CHECK(ms.values == std::vector<long>{28, 8, 1});
        CHECK(ms.monotone);
    }
    SECTION("node") {
        RingPtr R = make_ring({"x", "y"});
        MuStarIcis ms = mu_star_icis({parse_poly(R, "x*y")}, cfg);
        CHECK(ms.values == std::vector<long>{1, 1, 1});
        CHECK(ms.monotone);
    }
    SECTION("non-ICIS refused") {
        RingPtr R = r3();
        CHECK_THROWS_AS(mu_star_icis({parse_poly(R, "x*y*z")}, cfg), HypothesisError);
    }
}

TEST_CASE("mixed Bruce-Roberts numbers for the normal crossings divisor") {
    RingPtr R = r3();
    SamplingConfig cfg;
    VarietySpec X{R, {parse_poly(R, "x*y*z")}, std::nullopt, VarietyKind::general, false};
    Poly f = parse_poly(R, "x + y + z");
    SECTION("the full (1, 2, 1) sequence, including non-monotonicity") {
        auto seq = mu_X_star(f, X, cfg);
        REQUIRE(seq.size() == 3);
        CHECK(seq[0].value == ColengthResult::of(1));  // mu_X^(3) = mu_X(f)
        CHECK(seq[1].value == ColengthResult::of(2));  // mu_X^(2)
        CHECK(seq[2].value == ColengthResult::of(1));  // mu_X^(1)
        // the sequence increases from level 3 to level 2: not monotone
        CHECK(seq[1].value.value > seq[0].value.value);
        // on a smooth curve section, mu_X^(1)(f) = ord(f)
        CHECK(seq[2].value.value == germ_order(f));
        // witnesses exist at every finite level
        for (const auto& s : seq) CHECK(s.witness.has_value());
    }
    SECTION("i = n uses the identity section") {
        MuXiResult top = mu_X_i(f, X, 3, cfg);
        CHECK(top.value == ColengthResult::of(1));
        REQUIRE(top.witness.has_value());
        CHECK(top.witness->i == 3);
    }
    SECTION("ambient X gives mu* without the trailing 1") {
        VarietySpec A{R, {}, std::nullopt, VarietyKind::ambient, false};
        Poly g = parse_poly(R, "x^3 + y^3 + z^3");
        auto seq = mu_X_star(g, A, cfg);
        MuStar ms = mu_star(g, cfg);
        REQUIRE(seq.size() == 3);
        for (int k = 0; k < 3; ++k) CHECK(seq[k].value == ColengthResult::of(ms.values[k]));
    }
}

TEST_CASE("the diagonal family in four variables") {
    RingPtr R = r4();
    SamplingConfig cfg;
    Poly f = parse_poly(R, "x^2 + 2*y^2 + 3*z^2 + 5*t^2");
    SECTION("a = b = 2") {
        VarietySpec X{R, {parse_poly(R, "x^2 + y^2 + z^2 + t^2")}, std::vector<long>{1, 1, 1, 1},
                      VarietyKind::wh_hypersurface, false};
        auto seq = mu_X_star(f, X, cfg);
        REQUIRE(seq.size() == 4);
        CHECK(seq[0].value == ColengthResult::of(8));
        CHECK(seq[1].value == ColengthResult::of(6));
        CHECK(seq[2].value == ColengthResult::of(4));
        CHECK(seq[3].value == ColengthResult::of(2));
    }
    SECTION("a = 3, b = 2") {
        VarietySpec X{R, {parse_poly(R, "x^3 + y^3 + z^3 + t^3")}, std::vector<long>{1, 1, 1, 1},
                      VarietyKind::wh_hypersurface, false};
        auto seq = mu_X_star(f, X, cfg);
        REQUIRE(seq.size() == 4);
        CHECK(seq[0].value == ColengthResult::of(30));
        CHECK(seq[1].value == ColengthResult::of(14));
        CHECK(seq[2].value == ColengthResult::of(6));
        CHECK(seq[3].value == ColengthResult::of(2));
    }
}

TEST_CASE("generic linear-subspace Bruce-Roberts numbers") {
    RingPtr R = r4();
    SamplingConfig cfg;
    Poly f = parse_poly(R, "x^3 + x*y^4 + y^3*z + t^3 + y*z^5");
    SECTION("mu_{H^(i)}(f) for i = 3, 2, 1, 0") {
        CHECK(mu_H_br(f, 3, cfg).value == ColengthResult::of(72));
        CHECK(mu_H_br(f, 2, cfg).value == ColengthResult::of(68));
        CHECK(mu_H_br(f, 1, cfg).value == ColengthResult::of(66));
        CHECK(mu_H_br(f, 0, cfg).value == ColengthResult::of(64));
    }
    SECTION("i = 0 equals mu(f) plus the minimal generator count of J(f)") {
        std::vector<Poly> jac;
        for (int j = 0; j < 4; ++j) jac.push_back(f.derivative(j));
        SubModule J = SubModule::ideal(R, jac);
        long mg = static_cast<long>(minimal_generators(J).generators().size());
        CHECK(mu_H_br(f, 0, cfg).value == ColengthResult::of(60 + mg));
    }
    SECTION("restricted numbers mu_{H^(i)}(f|_{H^(i+1)})") {
        CHECK(mu_H_restricted(f, 0, cfg).value == ColengthResult::of(3));
        CHECK(mu_H_restricted(f, 1, cfg).value == ColengthResult::of(6));
        CHECK(mu_H_restricted(f, 2, cfg).value == ColengthResult::of(16));
        CHECK(mu_H_restricted(f, 3, cfg).value == ColengthResult::of(72));
    }
    SECTION("Teissier sums e_i = mu^(i+1) + mu^(i)") {
        CHECK(teissier_e_i(f, cfg) == std::vector<long>{3, 6, 16, 72});
    }
}

TEST_CASE("splitting identities for homogeneous hypersurfaces") {
    SamplingConfig cfg;
    SECTION("Morse function against a plane conic") {
        RingPtr R = make_ring({"x", "y"});
        Poly f = parse_poly(R, "x^2 + y^2");
        VarietySpec X{R, {parse_poly(R, "x^2 + 2*y^2")}, std::vector<long>{1, 1},
                      VarietyKind::wh_hypersurface, false};
        SplitReport rep = split_check(f, X, cfg);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].i == 2);  // the identity starts at i = 2 by design
        // J_X(f) = <x^2 + y^2, x*y> has colength 4; mu(f) = 1 and
        // mu(f,h) = dim O/(x^2, y^2) - 1 = 3, so 4 = 1 + 3.
        CHECK(rep.rows[0].mu_X_i == 4);
        CHECK(rep.rows[0].mu_i_f == 1);
        CHECK(rep.rows[0].mu_im1_fh == 3);
        CHECK(rep.rows[0].holds);
        CHECK(rep.mu_X_val == 4);
        CHECK(rep.mu_X_nm1 == 2);
        CHECK(rep.e_jf == 2);
        // three map components in two variables: the minor ideal is zero,
        // so e(JM(f,h)) = dim O/<f,h> = 4
        CHECK(rep.e_jm == 4);
        CHECK(rep.sum_holds);
    }
    SECTION("the diagonal family at a = b = 2 splits levelwise") {
        RingPtr R = r4();
        Poly f = parse_poly(R, "x^2 + 2*y^2 + 3*z^2 + 5*t^2");
        VarietySpec X{R, {parse_poly(R, "x^2 + y^2 + z^2 + t^2")}, std::vector<long>{1, 1, 1, 1},
                      VarietyKind::wh_hypersurface, false};
        SplitReport rep = split_check(f, X, cfg);
        REQUIRE(rep.rows.size() == 3);
        for (const auto& row : rep.rows) CHECK(row.holds);
        // mu_X^(3) = 6 = mu^(3)(f) + mu^(2)(f,h) = 1 + 5: a generic 3-section
        // keeps f Morse, and two generic quadric cones in C^3 have mu = 5
        CHECK(rep.rows[1].i == 3);
        CHECK(rep.rows[1].mu_X_i == 6);
        CHECK(rep.rows[1].mu_i_f == 1);
        CHECK(rep.rows[1].mu_im1_fh == 5);
        CHECK(rep.sum_holds);
    }
    SECTION("non-homogeneous equation refused") {
        RingPtr R = make_ring({"x", "y"});
        VarietySpec X{R, {parse_poly(R, "x^2 + y^3")}, std::vector<long>{3, 2},
                      VarietyKind::wh_hypersurface, false};
        CHECK_THROWS_AS(split_check(parse_poly(R, "x^2 + y^2"), X, cfg), HypothesisError);
    }
}

TEST_CASE("sampled minima respect the section lower bounds") {
    // every sampled finite section value is >= the generic minimum
    RingPtr R = r3();
    SamplingConfig cfg;
    Poly f = parse_poly(R, "x^3 + y^3 + z^3");
    MuStar ms = mu_star(f, cfg);
    auto rng = detail::sample_rng(99, 9000, 7);
    for (int s = 0; s < 5; ++s) {
        LinearSection p = random_section(R, 2, rng, cfg.height);
        ColengthResult m = milnor(pullback(f, p));
        if (m.finite) CHECK(m.value >= ms.values[1]);
    }
}
