#include <catch_amalgamated.hpp>

#include <random>

#include "twistforge/parse.hpp"
#include "twistforge/ratfunc.hpp"

using namespace twistforge;

namespace {

// brute-force dense division oracle over Z, little-endian
std::vector<Int> dense_div(std::vector<Int> a, const std::vector<Int>& b) {
  std::vector<Int> q(a.size() - b.size() + 1, Int(0));
  for (size_t i = a.size(); i-- >= b.size();) {
    Int c = a[i];
    if (c != 0) {
      REQUIRE(b.back() == 1);
      size_t shift = i - (b.size() - 1);
      q[shift] = c;
      for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    if (i + 1 == b.size()) break;
  }
  for (const Int& c : a) REQUIRE(c == 0);
  return q;
}

PolyQ from_dense_x(const std::vector<Int>& c) {
  PolyQ p;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) p.add_term(Monomial{{0, 0, 0, 0, static_cast<uint32_t>(i)}}, Rat(c[i]));
  return p;
}

// resultant Res_x(f, g) over Q by the Euclidean recurrence; independent of
// the conjugate-product path used by Cyc::norm
Rat resultant_q(std::vector<Rat> f, std::vector<Rat> g) {
  auto trim = [](std::vector<Rat>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  };
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return Rat(0);
  Rat acc(1);
  while (true) {
    if (g.size() == 1) return acc * pow(g[0], static_cast<long>(f.size() - 1));
    // r = f mod g
    std::vector<Rat> r = f;
    while (r.size() >= g.size() && !r.empty()) {
      Rat c = r.back() / g.back();
      size_t shift = r.size() - g.size();
      for (size_t j = 0; j < g.size(); ++j) r[shift + j] -= c * g[j];
      trim(r);
    }
    if (r.empty()) return Rat(0);
    long df = static_cast<long>(f.size() - 1), dg = static_cast<long>(g.size() - 1),
         dr = static_cast<long>(r.size() - 1);
    Rat factor = pow(g.back(), df - dr);
    if ((df % 2) && (dg % 2)) factor = -factor;
    acc *= factor;
    f = g;
    g = r;
  }
}

std::mt19937_64 rng(20240811);

Rat random_rat() {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

PolyQ random_poly(int max_terms, std::initializer_list<int> vars, int max_exp) {
  PolyQ p;
  std::uniform_int_distribution<int> terms(1, max_terms), expd(0, max_exp);
  int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    for (int v : vars) m.e[v] = static_cast<uint32_t>(expd(rng));
    p.add_term(m, random_rat());
  }
  return p;
}

RF random_ratfunc() {
  PolyQ num = random_poly(4, {VAR_U, VAR_V}, 3);
  PolyQ den;
  do {
    den = random_poly(3, {VAR_U, VAR_V}, 2);
  } while (den.is_zero());
  return RF(num, den);
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == parse_poly("x - 1"));
  CHECK(cyclotomic_polynomial(4) == parse_poly("x^2 + 1"));
  // divide x^10 - 1 by Phi_1 Phi_2 Phi_5 with the brute-force oracle
  std::vector<Int> x10m1(11, Int(0));
  x10m1[0] = -1;
  x10m1[10] = 1;
  std::vector<Int> phi1{-1, 1}, phi2{1, 1}, phi5{1, 1, 1, 1, 1};
  auto prod = detail::zp_mul(detail::zp_mul(phi1, phi2), phi5);
  auto expected = dense_div(x10m1, prod);
  CHECK(cyclotomic_polynomial(10) == from_dense_x(expected));
  CHECK(cyclotomic_polynomial(10) == parse_poly("x^4 - x^3 + x^2 - x + 1"));

  for (uint64_t n : {2, 3, 6, 8, 12, 15}) {
    PolyQ phi = cyclotomic_polynomial(n);
    CHECK(phi.degree_in(VAR_X) == detail::euler_phi(n));
    CHECK(phi.leading_coeff() == Rat(1));
  }
}

TEST_CASE("ratfunc normalization") {
  RF a = ratfunc_normalize(parse_poly("2*u^2"), parse_poly("4*u"));
  CHECK(a.num() == parse_poly("u"));
  CHECK(a.den() == parse_poly("2"));

  RF b = ratfunc_normalize(parse_poly("v^2 - 1"), parse_poly("v - 1"));
  CHECK(b == RF(parse_poly("v + 1")));

  RF z = ratfunc_normalize(PolyQ(), parse_poly("w^3"));
  CHECK(z.is_zero());
  CHECK(z.den() == parse_poly("1"));

  CHECK_THROWS_AS(ratfunc_normalize(parse_poly("u"), PolyQ()), zero_denominator_error);

  SECTION("normalize(a,b) = normalize(ca,cb) for nonzero common factors") {
    for (int it = 0; it < 25; ++it) {
      RF f = random_ratfunc();
      PolyQ cfac;
      do {
        cfac = random_poly(2, {VAR_U, VAR_V}, 2);
      } while (cfac.is_zero());
      RF g(f.num() * cfac, f.den() * cfac);
      CHECK(f == g);
    }
  }
}

TEST_CASE("substitution") {
  RF f = parse_ratfunc("x^2");
  RF inv_t = parse_ratfunc("1/t");
  RF r = substitute(f, {{VAR_X, inv_t}});
  CHECK(r == parse_ratfunc("1/t^2"));

  RF odd = parse_ratfunc("(v^2 - 3)/(2*v)");
  RF img = substitute(odd, {{VAR_V, parse_ratfunc("-v")}});
  CHECK(img == -odd);

  SECTION("zeta_6 scaling of v^6 is the identity") {
    RFC f6 = lift_to_cyclotomic(RF(parse_poly("v^6")), 6);
    CycQ zeta6 = CycQ::zeta(6);
    RFC bind = RFC(PolyC::variable(VAR_V, 1, zeta6));
    CHECK(substitute(f6, {{VAR_V, bind}}) == f6);
    CHECK(monomial_rescale(f6, VAR_V, zeta6) == f6);
    // and an odd power picks up the root of unity
    RFC f3 = lift_to_cyclotomic(RF(parse_poly("v^3")), 6);
    CHECK(monomial_rescale(f3, VAR_V, zeta6) ==
          f3 * RFC(CycQ::zeta(6, 3)));
  }

  SECTION("identically-zero denominator is rejected") {
    RF g = parse_ratfunc("1/(u - v)");
    CHECK_THROWS_AS(substitute(g, {{VAR_U, parse_ratfunc("v")}}), zero_denominator_error);
  }

  SECTION("composition agrees with composed bindings") {
    for (int it = 0; it < 10; ++it) {
      RF f = random_ratfunc();
      std::map<int, RF> sigma{{VAR_U, parse_ratfunc("v + 1")},
                              {VAR_V, parse_ratfunc("u*v")}};
      std::map<int, RF> tau{{VAR_U, parse_ratfunc("u - 2")},
                            {VAR_V, parse_ratfunc("3*v")}};
      std::map<int, RF> composed;
      for (const auto& [var, g] : sigma) composed[var] = substitute(g, tau);
      RF lhs = substitute(substitute(f, sigma), tau);
      RF rhs = substitute(f, composed);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("evaluation") {
  RF f = parse_ratfunc("u/(v - 1)");
  CHECK(evaluate(f, {{VAR_U, Rat(3)}, {VAR_V, Rat(2)}}) == Rat(3));
  CHECK_THROWS_AS(evaluate(f, {{VAR_U, Rat(3)}, {VAR_V, Rat(1)}}), pole_error);
  CHECK_THROWS_AS(evaluate(f, {{VAR_U, Rat(3)}}), std::invalid_argument);

  // closed form of the q2-m-m auxiliary function at (1,1,1) for f0 = u^3+2
  RF T = parse_ratfunc(
      "4*w^2*v^6*(u^3 + 2)/(v^12*w^4 - 2*v^6*(v^6 + 1)*w^2 + (v^6 - 1)^2)");
  CHECK(evaluate(T, {{VAR_U, Rat(1)}, {VAR_V, Rat(1)}, {VAR_W, Rat(1)}}) == Rat(-4));

  SECTION("evaluate commutes with arithmetic") {
    std::map<int, Rat> pt{{VAR_U, Rat(2, 3)}, {VAR_V, Rat(-5, 2)}};
    for (int it = 0; it < 30; ++it) {
      RF f = random_ratfunc(), g = random_ratfunc();
      try {
        Rat lhs = evaluate(f * g, pt);
        Rat rhs = evaluate(f, pt) * evaluate(g, pt);
        CHECK(lhs == rhs);
        Rat ls = evaluate(f + g, pt);
        Rat rs = evaluate(f, pt) + evaluate(g, pt);
        CHECK(ls == rs);
      } catch (const pole_error&) {
        // fine: both sides undefined
      }
    }
  }
}

TEST_CASE("root automorphisms") {
  RF plain = parse_ratfunc("(u^2 - 3)/(2*w)");
  CHECK(apply_root_automorphism(plain, 5) == plain);

  RFC f4 = RFC(PolyC::variable(VAR_U, 1, CycQ::zeta(4)));
  RFC img = apply_root_automorphism(f4, 3);
  CHECK(img == -f4);

  RFC f5 = RFC(PolyC::variable(VAR_U, 1, CycQ(5, Rat(1)) + CycQ::zeta(5)));
  RFC expect5 = RFC(PolyC::variable(VAR_U, 1, CycQ(5, Rat(1)) + CycQ::zeta(5, 2)));
  CHECK(apply_root_automorphism(f5, 2) == expect5);

  SECTION("homomorphism and composition") {
    RFC a = lift_to_cyclotomic(parse_ratfunc("u + 2"), 5) * RFC(CycQ::zeta(5));
    RFC b = lift_to_cyclotomic(parse_ratfunc("(v - 1)/(u + 1)"), 5) +
            RFC(CycQ::zeta(5, 3));
    for (uint64_t j : {2, 3, 4}) {
      CHECK(apply_root_automorphism(a * b, j) ==
            apply_root_automorphism(a, j) * apply_root_automorphism(b, j));
      for (uint64_t j2 : {2, 3}) {
        CHECK(apply_root_automorphism(apply_root_automorphism(a, j), j2) ==
              apply_root_automorphism(a, j * j2 % 5));
      }
    }
  }
}

TEST_CASE("cyclotomic integers: conjugate and norm") {
  CycInt one(7, Int(1));
  CHECK(one.conjugate() == one);
  CHECK(one.norm() == 1);

  CycInt z3 = CycInt::zeta(3);
  CycInt conj = z3.conjugate();
  CycInt minus_one_minus_z3 = -CycInt(3, Int(1)) - z3;
  CHECK(conj == minus_one_minus_z3);
  CHECK(z3.norm() == 1);

  CycInt w = CycInt(3, Int(1)) + z3 * Int(2);
  CHECK(w.norm() == 3);
  // brute expansion oracle: (1+2 zeta)(1+2 zeta^2) = 1 + 2(zeta+zeta^2) + 4
  CycInt brute = (CycInt(3, Int(1)) + CycInt::zeta(3, 1) * Int(2)) *
                 (CycInt(3, Int(1)) + CycInt::zeta(3, 2) * Int(2));
  CHECK(brute.is_rational());
  CHECK(brute.rational_part() == 3);

  SECTION("norm equals the resultant oracle") {
    std::mt19937_64 local(7);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (uint64_t n : {3, 4, 5, 8, 12}) {
      for (int it = 0; it < 8; ++it) {
        CycInt z = CycInt::with_conductor(n);
        for (size_t i = 0; i < z.dim(); ++i) z[i] = coeff(local);
        if (z.is_zero()) continue;
        Int nz = z.norm();
        auto phi = cyclotomic_coeffs(n);
        std::vector<Rat> f(phi.begin(), phi.end());
        std::vector<Rat> g;
        for (size_t i = 0; i < z.dim(); ++i) g.emplace_back(z[i]);
        CHECK(Rat(nz) == resultant_q(f, g));
      }
    }
  }
}

TEST_CASE("ring axioms on random samples") {
  for (int it = 0; it < 15; ++it) {
    RF f = random_ratfunc(), g = random_ratfunc(), h = random_ratfunc();
    CHECK((f + g) * h == f * h + g * h);
    CHECK(f * g == g * f);
    CHECK((f - f).is_zero());
    if (!g.is_zero()) CHECK(f / g * g == f);
    CHECK(f.pow(3) == f * f * f);
  }
}

TEST_CASE("parser round trips") {
  CHECK(parse_poly("x^3 - x + 1").str() == "x^3 - x + 1");
  for (const char* s : {"x^5 - 2*x + 3", "(v^2 - 1)/(2*v)", "u^2*v - 7/3", "-t^4 + w"}) {
    RF f = parse_ratfunc(s);
    CHECK(parse_ratfunc(f.str()) == f);
  }
  for (int it = 0; it < 40; ++it) {
    RF f = random_ratfunc();
    CHECK(parse_ratfunc(f.str()) == f);
  }
  CHECK_THROWS_AS(parse_ratfunc("x +* 2"), parse_error);
  CHECK_THROWS_AS(parse_ratfunc("y + 1"), parse_error);
  CHECK_THROWS_AS(parse_poly("1/(x+1)"), parse_error);
}
