#include <catch_amalgamated.hpp>

#include "twistforge/parse.hpp"
#include "twistforge/twists.hpp"

using namespace twistforge;

namespace {

HyperParams make_params(const std::string& f, long m, long a, long b, long c) {
  HyperParams hp;
  hp.f = parse_poly(f);
  hp.m = m;
  hp.a = a;
  hp.b = b;
  hp.c = c;
  return hp;
}

std::map<int, Rat> pt3(long u, long v, long w) {
  return {{VAR_U, Rat(u)}, {VAR_V, Rat(v)}, {VAR_W, Rat(w)}};
}

}  // namespace

TEST_CASE("q2-m-m construction") {
  TwistConstruction tc = build_q2_m_m(make_params("x^3 + 1", 3, 1, 1, 2));
  CHECK(tc.points.size() == 3);
  CHECK(tc.curves.size() == 3);
  VerifyReport rep = verify_on_curve(tc);
  CHECK(rep.all_verified);
  CHECK(verify_nondegenerate(tc).all_ok);

  SECTION("closed-form values at (1,1,1) for f = x^3 + 2, b = c = 1") {
    TwistConstruction tc2 = build_q2_m_m(make_params("x^3 + 2", 3, 1, 1, 1));
    CHECK(evaluate(tc2.T, pt3(1, 1, 1)) == Rat(-4));
    CHECK(evaluate(tc2.D, pt3(1, 1, 1)) == Rat(48));
    SpecializedInstance inst = specialize_construction(tc2, pt3(1, 1, 1));
    CHECK(inst.D_value == Rat(48));
    CHECK(inst.points[0].first == Rat(1));
    CHECK(inst.points[0].second == Rat(-1, 4));
    CHECK(inst.memberships_exact);
  }

  SECTION("defining identity of p, b = c = 1") {
    TwistConstruction tc3 = build_q2_m_m(make_params("x^3 + 1", 3, 1, 1, 1));
    RF lhs = *tc3.p * RF(parse_poly("2*w*v^6")) -
             RF(parse_poly("(1 + w^2)*v^6 - 1"));
    CHECK(lhs.is_zero());
  }

  SECTION("D is invariant under w -> -w") {
    RF img = substitute(tc.D, {{VAR_W, parse_ratfunc("-w")}});
    CHECK(img == tc.D);
  }

  SECTION("m = 5 still verifies") {
    TwistConstruction tc5 = build_q2_m_m(make_params("x^3 + 1", 5, 1, 2, -3));
    CHECK(verify_on_curve(tc5).all_verified);
    CHECK(verify_nondegenerate(tc5).all_ok);
  }

  SECTION("invalid parameters are rejected") {
    CHECK_THROWS_AS(build_q2_m_m(make_params("x^3 + 1", 4, 1, 1, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_q2_m_m(make_params("x^2", 3, 1, 1, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_q2_m_m(make_params("x^3 - x", 3, 1, 0, 1)),
                    std::invalid_argument);
    // square-free check: (x-1)^2 (x+2) has a double root
    CHECK_THROWS_AS(build_q2_m_m(make_params("(x - 1)^2*(x + 2)", 3, 1, 1, 1)),
                    std::invalid_argument);
  }
}

TEST_CASE("q2-2m-2m construction") {
  TwistConstruction tc = build_q2_2m_2m(make_params("x^3 + 1", 3, 1, 2, 3));
  CHECK(verify_on_curve(tc).all_verified);
  CHECK(verify_nondegenerate(tc).all_ok);

  SECTION("genus-zero parametrization identity") {
    // v^{2m} p^2 - q^2 + (c - b v^{2m}) f(u) = 0
    RF fu(detail::rename_var(tc.f, VAR_X, VAR_U));
    RF lhs = RF(parse_poly("v^6")) * tc.p->pow(2) - tc.q->pow(2) +
             (RF(Rat(3)) - RF(parse_poly("2*v^6"))) * fu;
    CHECK(lhs.is_zero());
  }

  SECTION("psi fixes p and T, negates q (b = c)") {
    AutomorphismReport rep =
        verify_automorphism(TwistKind::q2_2m_2m, make_params("x^3 + 1", 3, 1, 2, 2));
    CHECK(rep.all_hold);
  }
}

TEST_CASE("m-m-2m construction") {
  TwistConstruction tc = build_m_m_2m(make_params("", 3, 1, 2, 5));
  CHECK(verify_on_curve(tc).all_verified);
  CHECK(verify_nondegenerate(tc).all_ok);

  SECTION("parametrization identity p^2 - a = u^{2m}(q^2 - b)") {
    RF lhs = tc.p->pow(2) - RF(Rat(1)) -
             RF(parse_poly("u^6")) * (tc.q->pow(2) - RF(Rat(2)));
    CHECK(lhs.is_zero());
  }

  SECTION("chi-bar fixes P1 (a = b)") {
    AutomorphismReport rep =
        verify_automorphism(TwistKind::m_m_2m, make_params("", 3, 1, 1, 5));
    CHECK(rep.all_hold);
  }

  SECTION("m = 5") {
    TwistConstruction tc5 = build_m_m_2m(make_params("", 5, 2, -3, 1));
    CHECK(verify_on_curve(tc5).all_verified);
  }
}

TEST_CASE("p-twist product family") {
  TwistConstruction tc = build_p_twist_product(5, 1, 1, 3);
  CHECK(tc.points.size() == 2);
  CHECK(verify_on_curve(tc).all_verified);
  CHECK(verify_nondegenerate(tc).all_ok);

  SECTION("a = b still nondegenerate, points distinct") {
    TwistConstruction te = build_p_twist_product(5, 1, 1, 1);
    CHECK(verify_on_curve(te).all_verified);
    NondegeneracyReport nd = verify_nondegenerate(te);
    CHECK(nd.all_ok);
    bool found = false;
    for (const auto& f : nd.factors)
      if (f.name == "x2 - x1") {
        found = true;
        CHECK(f.nonzero);
      }
    CHECK(found);
  }

  SECTION("exact specialization at (1,1,1,2) for p=7, m=2, a=3, b=5") {
    TwistConstruction t7 = build_p_twist_product(7, 2, 3, 5);
    std::map<int, Rat> at{{VAR_U, Rat(1)}, {VAR_V, Rat(1)}, {VAR_W, Rat(1)}, {VAR_T, Rat(2)}};
    SpecializedInstance inst = specialize_construction(t7, at);
    CHECK(inst.memberships_exact);
  }

  SECTION("range validation") {
    CHECK_THROWS_AS(build_p_twist_product(5, 5, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_p_twist_product(5, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_p_twist_product(5, 1, 0, 1), std::invalid_argument);
  }
}

TEST_CASE("p-twist additive family") {
  TwistConstruction tc = build_p_twist_additive(5, 1, 1, 1, 2);
  CHECK(tc.alpha == 1);
  CHECK(tc.beta == 2);
  CHECK(verify_on_curve(tc).all_verified);
  CHECK(verify_nondegenerate(tc).all_ok);

  SECTION("exponent solution for p = 7, m + n = 3") {
    TwistConstruction t7 = build_p_twist_additive(7, 1, 2, 1, 1);
    CHECK(t7.alpha == 1);
    CHECK(t7.beta == 2);
    CHECK(verify_on_curve(t7).all_verified);
  }

  SECTION("a = b keeps T nonzero and the construction valid") {
    TwistConstruction te = build_p_twist_additive(5, 1, 1, 2, 2);
    CHECK(!te.T.is_zero());
    CHECK(verify_on_curve(te).all_verified);
  }

  SECTION("gcd(p, m+n) = 1 is enforced") {
    CHECK_THROWS_AS(build_p_twist_additive(5, 2, 3, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("two-variable example family") {
  TwistConstruction tc = build_example_2_m_2m(parse_poly("x^3 + 1"), 3);
  CHECK(verify_on_curve(tc).all_verified);
  CHECK(verify_nondegenerate(tc).all_ok);

  SECTION("q^2 - p^2 = f(u)") {
    RF fu(detail::rename_var(tc.f, VAR_X, VAR_U));
    CHECK(tc.q->pow(2) - tc.p->pow(2) == fu);
  }

  SECTION("m = 5") {
    CHECK(verify_on_curve(build_example_2_m_2m(parse_poly("x^3 + 1"), 5)).all_verified);
  }

  SECTION("even-degree f") {
    CHECK(verify_on_curve(build_example_2_m_2m(parse_poly("x^4 + x + 1"), 3)).all_verified);
  }

  SECTION("specialization at (1,1)") {
    std::map<int, Rat> at{{VAR_U, Rat(1)}, {VAR_V, Rat(1)}};
    CHECK(evaluate(*tc.p, at) == Rat(-1, 2));
    SpecializedInstance inst = specialize_construction(tc, at);
    CHECK(inst.D_value == Rat(1, 8));
    CHECK(inst.memberships_exact);
  }
}

TEST_CASE("perturbed points fail verification with a nonzero residual") {
  TwistConstruction tc = build_q2_m_m(make_params("x^3 + 1", 3, 1, 1, 2));
  tc.points[1].second = tc.points[1].second * RF(Rat(2));
  VerifyReport rep = verify_on_curve(tc);
  CHECK(!rep.all_verified);
  CHECK(rep.checks[1].on_curve == false);
  CHECK(rep.checks[1].residual != "0");
  CHECK(rep.checks[0].on_curve);
  CHECK(rep.checks[2].on_curve);
}

TEST_CASE("automorphism identities") {
  AutomorphismReport r1 =
      verify_automorphism(TwistKind::q2_m_m, make_params("x^3 + 1", 3, 1, 1, 1));
  CHECK(r1.all_hold);
  AutomorphismReport r2 =
      verify_automorphism(TwistKind::q2_2m_2m, make_params("x^3 - x + 1", 3, 1, -3, -3));
  CHECK(r2.all_hold);
  AutomorphismReport r3 =
      verify_automorphism(TwistKind::m_m_2m, make_params("", 3, 2, 2, 1));
  CHECK(r3.all_hold);
  CHECK_THROWS_AS(
      verify_automorphism(TwistKind::q2_m_m, make_params("x^3 + 1", 3, 1, 1, 2)),
      std::invalid_argument);
}

TEST_CASE("specialization error modes") {
  SECTION("pole of T") {
    TwistConstruction tc = build_q2_m_m(make_params("x^3 + 2", 3, 1, 1, 1));
    // at (1, 1, 2) the denominator of T vanishes: w^2 (w^2 - 4b) at v = 1
    CHECK_THROWS_AS(specialize_construction(tc, pt3(1, 1, 2)), pole_error);
  }
  SECTION("degenerate point is distinguished from a pole") {
    TwistConstruction tc = build_q2_m_m(make_params("x^3 + 1", 3, 1, 2, 1));
    // q(1,1,1) = ((b - w^2) v^6 - c)/(2 w v^3) = 0 while T stays finite
    CHECK_THROWS_AS(specialize_construction(tc, pt3(1, 1, 1)), degeneracy_error);
  }
}
