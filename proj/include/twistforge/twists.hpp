#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistforge/ratfunc.hpp"

namespace twistforge {

enum class TwistKind {
  q2_m_m,          // quadratic twist + two m-twists
  q2_2m_2m,        // quadratic twist + two 2m-twists
  m_m_2m,          // two m-twists + one 2m-twist (f = x^m + a)
  p_twist_product, // p-twists of y^p = x^m(x+a), y^p = x^m(x+b)
  p_twist_additive,// p-twists of y^p = x^m(x^n + aD), four-parameter family
  example_2_m_2m,  // simultaneous quadratic / m / 2m twist in two variables
};

inline const char* twist_kind_name(TwistKind k) {
  switch (k) {
    case TwistKind::q2_m_m: return "q2-m-m";
    case TwistKind::q2_2m_2m: return "q2-2m-2m";
    case TwistKind::m_m_2m: return "m-m-2m";
    case TwistKind::p_twist_product: return "p-twist-product";
    case TwistKind::p_twist_additive: return "p-twist-additive";
    case TwistKind::example_2_m_2m: return "example-2-m-2m";
  }
  return "?";
}

struct HyperParams {
  PolyQ f;  // univariate in x
  long m = 3;
  long a = 1;
  long b = 1;
  long c = 1;
};

// One twisted curve written as y_coeff * y^y_exp = rhs(x).
struct CurveEquation {
  RF y_coeff;
  unsigned y_exp = 2;
  RF rhs;
  std::string label;
};

struct TwistConstruction {
  TwistKind kind{};
  long m = 0;
  long n = 0;       // (m-1)/2 for the quadratic/m families
  long p_exp = 2;   // superelliptic exponent
  long n_add = 0;   // the "n" of the additive p-twist family
  long alpha = 0, beta = 0;
  long a = 0, b = 0, c = 0;
  PolyQ f;  // in x; zero when the builder does not take f
  RF D, T;
  std::optional<RF> p, q;
  std::vector<std::pair<RF, RF>> points;
  std::vector<CurveEquation> curves;
  std::vector<std::pair<std::string, RF>> nondegeneracy_factors;
  // generic sanity expressions (e.g. point distinctness) checked at the
  // function level only, never required at a specialization point
  std::vector<std::pair<std::string, RF>> generic_factors;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline PolyQ rename_var(const PolyQ& f, int from, int to) {
  PolyQ out;
  for (const auto& [mn, cf] : f.terms()) {
    Monomial m2 = mn;
    uint32_t e = m2.e[from];
    m2.e[from] = 0;
    m2.e[to] += e;
    out.add_term(m2, cf);
  }
  return out;
}

inline PolyQ mono(int var, uint32_t e, const Rat& c = Rat(1)) {
  return PolyQ::variable(var, e, c);
}

inline void validate_f(const PolyQ& f, uint32_t min_deg) {
  require(!f.is_zero() && f.var_mask() == (1u << VAR_X),
          "f must be a nonzero univariate polynomial in x");
  require(f.degree_in(VAR_X) >= min_deg, "deg f too small");
  require(is_squarefree_in(f, VAR_X), "f must be square-free");
}

inline void validate_m_odd(long m) {
  require(m >= 3 && m % 2 == 1, "m must be an odd integer >= 3");
}

}  // namespace detail

// ---- builders ---------------------------------------------------------------

inline TwistConstruction build_q2_m_m(const HyperParams& hp) {
  using detail::mono;
  detail::validate_m_odd(hp.m);
  detail::validate_f(hp.f, 3);
  detail::require(hp.b != 0 && hp.c != 0, "b, c must be nonzero");
  const long m = hp.m, n = (m - 1) / 2;
  const Rat b(hp.b), c(hp.c);
  const uint32_t um = static_cast<uint32_t>(m);

  PolyQ fu = detail::rename_var(hp.f, VAR_X, VAR_U);
  PolyQ v2m = mono(VAR_V, 2 * um);
  PolyQ w2 = mono(VAR_W, 2);
  // M = v^{4m} w^4 - 2 v^{2m} (b v^{2m} + c) w^2 + (b v^{2m} - c)^2
  PolyQ M = v2m * v2m * w2 * w2 -
            PolyQ(Rat(2)) * v2m * (v2m.scaled(b) + PolyQ(c)) * w2 +
            (v2m.scaled(b) - PolyQ(c)).pow(2);

  TwistConstruction tc;
  tc.kind = TwistKind::q2_m_m;
  tc.m = m;
  tc.n = n;
  tc.b = hp.b;
  tc.c = hp.c;
  tc.f = hp.f;
  tc.T = RF::from_reduced(mono(VAR_W, 2, Rat(4)) * v2m * fu, M);
  PolyQ pnum = (PolyQ(b) + w2) * v2m - PolyQ(c);
  PolyQ qnum = (PolyQ(b) - w2) * v2m - PolyQ(c);
  tc.p = RF::from_reduced(pnum, mono(VAR_W, 1, Rat(2)) * v2m);
  tc.q = RF::from_reduced(qnum, mono(VAR_W, 1, Rat(2)) * mono(VAR_V, um));
  // D = f(u) T^{m-1}
  tc.D = RF::from_reduced(
      fu.pow(um) * mono(VAR_W, 2 * (um - 1), pow(Rat(4), m - 1)) *
          mono(VAR_V, 2 * um * (um - 1)),
      M.pow(um - 1));

  const uint32_t k = static_cast<uint32_t>(n * (m - 1));
  RF x2 = RF::from_reduced(
      fu.pow(um - 1) * mono(VAR_W, 2 * (um - 2), pow(Rat(4), m - 2)) *
          mono(VAR_V, 2 * um * (um - 2) - 2),
      M.pow(um - 2));
  RF y2 = RF::from_reduced(
      pnum * fu.pow(static_cast<uint32_t>(n * m)) *
          mono(VAR_W, 2 * k - 1, pow(Rat(4), static_cast<long>(k))) *
          mono(VAR_V, 2 * um * (k - 1)),
      M.pow(k).scaled(Rat(2)));
  RF x3 = RF::from_reduced(
      fu.pow(um - 1) * mono(VAR_W, 2 * (um - 2), pow(Rat(4), m - 2)) *
          mono(VAR_V, 2 * um * (um - 2)),
      M.pow(um - 2));
  RF y3 = RF::from_reduced(
      qnum * fu.pow(static_cast<uint32_t>(n * m)) *
          mono(VAR_W, 2 * k - 1, pow(Rat(4), static_cast<long>(k))) *
          mono(VAR_V, 2 * um * k - um),
      M.pow(k).scaled(Rat(2)));
  tc.points = {{RF::variable(VAR_U), tc.T.pow(-n)}, {x2, y2}, {x3, y3}};

  RF Dm1 = tc.D.pow(m - 1);
  tc.curves = {
      {tc.D, 2, RF(hp.f), "D*y^2 = f(x)"},
      {RF(Rat(1)), 2, RF(mono(VAR_X, um)) + RF(b) * Dm1, "y^2 = x^m + b*D^(m-1)"},
      {RF(Rat(1)), 2, RF(mono(VAR_X, um)) + RF(c) * Dm1, "y^2 = x^m + c*D^(m-1)"},
  };

  tc.nondegeneracy_factors = {
      {"f(u)", RF(fu)},
      {"T", tc.T},
      {"D", tc.D},
      {"p", *tc.p},
      {"q", *tc.q},
      {"p^2 - b", tc.p->pow(2) - RF(b)},
      {"q^2 - c", tc.q->pow(2) - RF(c)},
  };
  for (size_t i = 0; i < tc.points.size(); ++i) {
    tc.nondegeneracy_factors.emplace_back("x" + std::to_string(i + 1), tc.points[i].first);
    tc.nondegeneracy_factors.emplace_back("y" + std::to_string(i + 1), tc.points[i].second);
  }
  return tc;
}

inline TwistConstruction build_q2_2m_2m(const HyperParams& hp) {
  using detail::mono;
  detail::validate_m_odd(hp.m);
  detail::validate_f(hp.f, 3);
  detail::require(hp.b != 0 && hp.c != 0, "b, c must be nonzero");
  const long m = hp.m, n = (m - 1) / 2;
  const Rat b(hp.b), c(hp.c);
  const uint32_t um = static_cast<uint32_t>(m);

  PolyQ fu = detail::rename_var(hp.f, VAR_X, VAR_U);
  PolyQ v2m = mono(VAR_V, 2 * um);
  PolyQ w2 = mono(VAR_W, 2);
  PolyQ cb = PolyQ(c) - v2m.scaled(b);  // c - b v^{2m}
  // N = v^{4m} w^4 - 2 f v^{2m} (c + b v^{2m}) w^2 + f^2 (c - b v^{2m})^2
  PolyQ N = v2m * v2m * w2 * w2 -
            PolyQ(Rat(2)) * fu * v2m * (PolyQ(c) + v2m.scaled(b)) * w2 +
            fu * fu * cb * cb;
  PolyQ Tden = mono(VAR_V, 4 * um, Rat(4)) * w2;

  TwistConstruction tc;
  tc.kind = TwistKind::q2_2m_2m;
  tc.m = m;
  tc.n = n;
  tc.b = hp.b;
  tc.c = hp.c;
  tc.f = hp.f;
  tc.T = RF::from_reduced(N, Tden);
  tc.p = RF::from_reduced(v2m * w2 - fu * cb, mono(VAR_W, 1, Rat(2)) * v2m);
  tc.q = RF::from_reduced(-(v2m * w2) - fu * cb,
                          mono(VAR_W, 1, Rat(2)) * mono(VAR_V, um));
  tc.D = RF::from_reduced(fu * N.pow(um - 1), Tden.pow(um - 1));

  RF x3 = RF(mono(VAR_V, 2)) * tc.T;
  tc.points = {{RF::variable(VAR_U), tc.T.pow(-n)},
               {tc.T, *tc.p * tc.T.pow(n)},
               {x3, *tc.q * tc.T.pow(n)}};

  tc.curves = {
      {tc.D, 2, RF(hp.f), "D*y^2 = f(x)"},
      {RF(Rat(1)), 2, RF(mono(VAR_X, um)) + RF(b) * tc.D, "y^2 = x^m + b*D"},
      {RF(Rat(1)), 2, RF(mono(VAR_X, um)) + RF(c) * tc.D, "y^2 = x^m + c*D"},
  };

  tc.nondegeneracy_factors = {
      {"f(u)", RF(fu)},
      {"T", tc.T},
      {"D", tc.D},
      {"p", *tc.p},
      {"q", *tc.q},
      {"y2^2 - x2^m", tc.points[1].second.pow(2) - tc.points[1].first.pow(m)},
      {"y3^2 - x3^m", tc.points[2].second.pow(2) - tc.points[2].first.pow(m)},
  };
  for (size_t i = 0; i < tc.points.size(); ++i) {
    tc.nondegeneracy_factors.emplace_back("x" + std::to_string(i + 1), tc.points[i].first);
    tc.nondegeneracy_factors.emplace_back("y" + std::to_string(i + 1), tc.points[i].second);
  }
  return tc;
}

inline TwistConstruction build_m_m_2m(const HyperParams& hp) {
  using detail::mono;
  detail::validate_m_odd(hp.m);
  detail::require(hp.a != 0 && hp.b != 0 && hp.c != 0, "a, b, c must be nonzero");
  const long m = hp.m, n = (m - 1) / 2;
  const Rat a(hp.a), b(hp.b), c(hp.c);
  const uint32_t um = static_cast<uint32_t>(m);

  PolyQ u2m = mono(VAR_U, 2 * um);
  PolyQ w2 = mono(VAR_W, 2);
  PolyQ abu = PolyQ(a) - u2m.scaled(b);  // a - b u^{2m}
  // Gamma = w^4 - 2 (a + b u^{2m}) w^2 + (a - b u^{2m})^2, so p^2 - a = Gamma/(4w^2)
  PolyQ Gamma = w2 * w2 - PolyQ(Rat(2)) * (PolyQ(a) + u2m.scaled(b)) * w2 + abu * abu;
  PolyQ Tden = Gamma.scaled(c) + mono(VAR_V, um, Rat(4)) * w2;

  TwistConstruction tc;
  tc.kind = TwistKind::m_m_2m;
  tc.m = m;
  tc.n = n;
  tc.a = hp.a;
  tc.b = hp.b;
  tc.c = hp.c;
  tc.f = mono(VAR_X, um) + PolyQ(a);
  tc.T = RF::from_reduced(mono(VAR_W, 2, Rat(4)), Tden);
  PolyQ pnum = w2 + abu;
  PolyQ qnum = -w2 + abu;
  tc.p = RF::from_reduced(pnum, mono(VAR_W, 1, Rat(2)));
  tc.q = RF::from_reduced(qnum, mono(VAR_W, 1, Rat(2)) * mono(VAR_U, um));
  tc.D = RF::from_reduced(Gamma * mono(VAR_W, 2 * (um - 1), pow(Rat(4), m - 1)),
                          Tden.pow(um));

  const uint32_t nm = static_cast<uint32_t>(n * m);
  RF x1 = RF::from_reduced(Gamma * mono(VAR_W, 2 * (um - 2), pow(Rat(4), m - 2)),
                           Tden.pow(um - 1));
  RF y1 = RF::from_reduced(
      pnum * Gamma.pow(static_cast<uint32_t>(n)) *
          mono(VAR_W, 2 * (nm - n) - 1, pow(Rat(4), static_cast<long>(nm - n))),
      Tden.pow(nm).scaled(Rat(2)));
  RF x2 = RF::from_reduced(Gamma * mono(VAR_W, 2 * (um - 2), pow(Rat(4), m - 2)),
                           mono(VAR_U, 2) * Tden.pow(um - 1));
  RF y2 = RF::from_reduced(
      qnum * Gamma.pow(static_cast<uint32_t>(n)) *
          mono(VAR_W, 2 * (nm - n) - 1, pow(Rat(4), static_cast<long>(nm - n))),
      mono(VAR_U, um, Rat(2)) * Tden.pow(nm));
  RF x3 = RF::from_reduced(mono(VAR_V, 1, Rat(4)) * w2, Tden);
  RF y3 = RF::from_reduced(mono(VAR_W, 2 * static_cast<uint32_t>(n),
                                pow(Rat(4), n)),
                           Tden.pow(static_cast<uint32_t>(n)));
  tc.points = {{x1, y1}, {x2, y2}, {x3, y3}};

  RF Dm1 = tc.D.pow(m - 1);
  tc.curves = {
      {RF(Rat(1)), 2, RF(mono(VAR_X, um)) + RF(a) * Dm1, "y^2 = x^m + a*D^(m-1)"},
      {RF(Rat(1)), 2, RF(mono(VAR_X, um)) + RF(b) * Dm1, "y^2 = x^m + b*D^(m-1)"},
      {RF(Rat(1)), 2, RF(mono(VAR_X, um)) + RF(c) * tc.D, "y^2 = x^m + c*D"},
  };

  tc.nondegeneracy_factors = {
      {"T", tc.T},
      {"D", tc.D},
      {"p", *tc.p},
      {"q", *tc.q},
      {"y1^2 - a", tc.p->pow(2) - RF(a)},
      {"y2^2 - b", tc.q->pow(2) - RF(b)},
      {"y3^2 - x3^m", y3.pow(2) - x3.pow(m)},
  };
  for (size_t i = 0; i < tc.points.size(); ++i) {
    tc.nondegeneracy_factors.emplace_back("x" + std::to_string(i + 1), tc.points[i].first);
    tc.nondegeneracy_factors.emplace_back("y" + std::to_string(i + 1), tc.points[i].second);
  }
  return tc;
}

inline TwistConstruction build_p_twist_product(long p, long m, long a, long b) {
  using detail::mono;
  detail::require(p >= 2, "p must be >= 2");
  detail::require(m > 0 && m < p, "0 < m < p required");
  detail::require(a != 0 && b != 0, "a, b must be nonzero");
  const uint32_t up = static_cast<uint32_t>(p), um = static_cast<uint32_t>(m);

  TwistConstruction tc;
  tc.kind = TwistKind::p_twist_product;
  tc.m = m;
  tc.p_exp = p;
  tc.a = a;
  tc.b = b;

  PolyQ numT = mono(VAR_V, up, Rat(b)) * mono(VAR_W, um) -
               mono(VAR_U, um, Rat(a)) * mono(VAR_T, up);
  PolyQ denT = mono(VAR_U, um + 1) * mono(VAR_T, up) -
               mono(VAR_V, up) * mono(VAR_W, um + 1);
  tc.T = RF(numT, denT);
  RF u = RF::variable(VAR_U);
  tc.D = tc.T.pow(m - p) * RF(mono(VAR_U, um)) * (u * tc.T + RF(Rat(a))) /
         RF(mono(VAR_V, up));

  RF x1 = u * tc.T, y1 = RF::variable(VAR_V) * tc.T;
  RF x2 = RF::variable(VAR_W) * tc.T, y2 = RF::variable(VAR_T) * tc.T;
  tc.points = {{x1, y1}, {x2, y2}};

  auto rhs = [&](long s) {
    return RF(mono(VAR_X, um) * (mono(VAR_X, 1) + PolyQ(Rat(s))));
  };
  tc.curves = {
      {tc.D, static_cast<unsigned>(p), rhs(a), "D*y^p = x^m*(x+a)"},
      {tc.D, static_cast<unsigned>(p), rhs(b), "D*y^p = x^m*(x+b)"},
  };

  tc.nondegeneracy_factors = {
      {"T", tc.T},
      {"D", tc.D},
      {"x1 + a", x1 + RF(Rat(a))},
      {"x2 + b", x2 + RF(Rat(b))},
  };
  tc.generic_factors = {{"x2 - x1", x2 - x1}};
  for (size_t i = 0; i < tc.points.size(); ++i) {
    tc.nondegeneracy_factors.emplace_back("x" + std::to_string(i + 1), tc.points[i].first);
    tc.nondegeneracy_factors.emplace_back("y" + std::to_string(i + 1), tc.points[i].second);
  }
  return tc;
}

inline TwistConstruction build_p_twist_additive(long p, long m, long n, long a, long b) {
  using detail::mono;
  detail::require(p >= 2 && m >= 1 && n >= 1, "p >= 2, m >= 1, n >= 1 required");
  detail::require(std::gcd(p, m + n) == 1, "gcd(p, m+n) = 1 required");
  detail::require(a != 0 && b != 0, "a, b must be nonzero");
  const long s = m + n;
  long alpha = 1;
  if (s > 1) {
    while ((p % s) * alpha % s != 1) ++alpha;  // minimal positive inverse
  }
  long beta = (p * alpha - 1) / s;
  const uint32_t up = static_cast<uint32_t>(p), um = static_cast<uint32_t>(m),
                 un = static_cast<uint32_t>(n);

  TwistConstruction tc;
  tc.kind = TwistKind::p_twist_additive;
  tc.m = m;
  tc.n_add = n;
  tc.p_exp = p;
  tc.alpha = alpha;
  tc.beta = beta;
  tc.a = a;
  tc.b = b;

  PolyQ numT = mono(VAR_U, um) * mono(VAR_V, um) *
               (mono(VAR_U, un, Rat(b)) - mono(VAR_V, un, Rat(a)));
  PolyQ denT = mono(VAR_V, um, Rat(b)) * mono(VAR_W, up) -
               mono(VAR_U, um, Rat(a)) * mono(VAR_T, up);
  tc.T = RF(numT, denT);
  RF wp = RF(mono(VAR_W, up));
  tc.D = tc.T.pow(beta * n) * (wp * tc.T - RF(mono(VAR_U, um + un))) /
         RF(mono(VAR_U, um, Rat(a)));

  RF Tb = tc.T.pow(beta), Ta = tc.T.pow(alpha);
  tc.points = {{RF::variable(VAR_U) * Tb, RF::variable(VAR_W) * Ta},
               {RF::variable(VAR_V) * Tb, RF::variable(VAR_T) * Ta}};

  auto rhs = [&](long scale) {
    return RF(mono(VAR_X, um + un)) + RF(Rat(scale)) * tc.D * RF(mono(VAR_X, um));
  };
  tc.curves = {
      {RF(Rat(1)), static_cast<unsigned>(p), rhs(a), "y^p = x^m*(x^n + a*D)"},
      {RF(Rat(1)), static_cast<unsigned>(p), rhs(b), "y^p = x^m*(x^n + b*D)"},
  };

  tc.nondegeneracy_factors = {
      {"T", tc.T},
      {"D", tc.D},
      {"w^p*T - u^(m+n)", wp * tc.T - RF(mono(VAR_U, um + un))},
      {"b*u^n - a*v^n", RF(mono(VAR_U, un, Rat(b)) - mono(VAR_V, un, Rat(a)))},
  };
  for (size_t i = 0; i < tc.points.size(); ++i) {
    tc.nondegeneracy_factors.emplace_back("x" + std::to_string(i + 1), tc.points[i].first);
    tc.nondegeneracy_factors.emplace_back("y" + std::to_string(i + 1), tc.points[i].second);
  }
  return tc;
}

inline TwistConstruction build_example_2_m_2m(const PolyQ& f, long m) {
  using detail::mono;
  detail::validate_m_odd(m);
  detail::require(!f.is_zero() && !f.is_constant() &&
                      (f.var_mask() & ~(1u << VAR_X)) == 0,
                  "f must be a nonconstant univariate polynomial in x");
  detail::require(is_squarefree_in(f, VAR_X), "f must be square-free");
  const long n = (m - 1) / 2;
  const uint32_t um = static_cast<uint32_t>(m);

  PolyQ fu = detail::rename_var(f, VAR_X, VAR_U);
  PolyQ v2 = mono(VAR_V, 2);

  TwistConstruction tc;
  tc.kind = TwistKind::example_2_m_2m;
  tc.m = m;
  tc.n = n;
  tc.f = f;
  RF p = RF(v2 - fu, mono(VAR_V, 1, Rat(2)));
  RF q = RF(v2 + fu, mono(VAR_V, 1, Rat(2)));
  tc.p = p;
  tc.q = q;
  tc.D = RF(fu) * p.pow(2 * (m - 1));
  tc.T = p;  // the auxiliary function of this family

  RF P_y = p.pow(-(m - 1));
  RF Q_x = RF(fu) * p.pow(2 * (m - 2));
  RF Q_y = RF(fu).pow(n) * p.pow(2 * n * (m - 1) - 1) * q;
  RF R_x = p.pow(2);
  RF R_y = q * p.pow(m - 1);
  tc.points = {{RF::variable(VAR_U), P_y}, {Q_x, Q_y}, {R_x, R_y}};

  tc.curves = {
      {tc.D, 2, RF(f), "D*y^2 = f(x)"},
      {RF(Rat(1)), 2, RF(mono(VAR_X, um)) + tc.D.pow(m - 1), "y^2 = x^m + D^(m-1)"},
      {RF(Rat(1)), 2, RF(mono(VAR_X, um)) + tc.D, "y^2 = x^m + D"},
  };

  tc.nondegeneracy_factors = {
      {"f(u)", RF(fu)},
      {"p", p},
      {"q", q},
      {"D", tc.D},
  };
  for (size_t i = 0; i < tc.points.size(); ++i) {
    tc.nondegeneracy_factors.emplace_back("x" + std::to_string(i + 1), tc.points[i].first);
    tc.nondegeneracy_factors.emplace_back("y" + std::to_string(i + 1), tc.points[i].second);
  }
  return tc;
}

// ---- verification -----------------------------------------------------------

struct MembershipCheck {
  size_t point_index = 0;
  std::string curve;
  bool on_curve = false;
  std::string residual;
};

struct VerifyReport {
  std::vector<MembershipCheck> checks;
  bool all_verified = true;
};

namespace detail {

// substitute x -> X into a polynomial, staying in raw fraction form
inline RawFrac<Rat> raw_subst_x(const PolyQ& poly, const RawFrac<Rat>& X) {
  auto view = univariate_view(poly, VAR_X);
  std::map<uint32_t, RawFrac<Rat>> xpow;
  xpow[0] = RawFrac<Rat>::from_poly(PolyQ(Rat(1)));
  RawFrac<Rat> acc = RawFrac<Rat>::from_poly(PolyQ());
  for (const auto& [d, coeff] : view) {
    auto it = xpow.find(d);
    if (it == xpow.end()) it = xpow.emplace(d, X.pow(d)).first;
    acc = acc + RawFrac<Rat>{coeff * it->second.num, it->second.den};
  }
  return acc;
}

inline RawFrac<Rat> raw_rhs_at(const RF& rhs, const RawFrac<Rat>& X) {
  RawFrac<Rat> top = raw_subst_x(rhs.num(), X);
  RawFrac<Rat> bot = raw_subst_x(rhs.den(), X);
  if (bot.num_is_zero())
    throw zero_denominator_error("curve equation has a pole at the point");
  return {top.num * bot.den, top.den * bot.num};
}

}  // namespace detail

// substitutes each point into its curve over the rational function field and
// reports whether the residual normalizes to zero
inline VerifyReport verify_on_curve(const TwistConstruction& tc) {
  VerifyReport rep;
  for (size_t i = 0; i < tc.points.size() && i < tc.curves.size(); ++i) {
    const auto& [X, Y] = tc.points[i];
    const CurveEquation& ce = tc.curves[i];
    MembershipCheck mc;
    mc.point_index = i;
    mc.curve = ce.label;
    try {
      RawFrac<Rat> lhs = ce.y_coeff.raw() * Y.raw().pow(ce.y_exp);
      RawFrac<Rat> rhs = detail::raw_rhs_at(ce.rhs, X.raw());
      RawFrac<Rat> res = lhs - rhs;
      mc.on_curve = res.num_is_zero();
      mc.residual = mc.on_curve ? "0" : RF::from_raw(res).str();
    } catch (const zero_denominator_error& e) {
      mc.on_curve = false;
      mc.residual = e.what();
    }
    if (!mc.on_curve) rep.all_verified = false;
    rep.checks.push_back(std::move(mc));
  }
  return rep;
}

struct FactorStatus {
  std::string name;
  bool nonzero = false;
};
struct NonconstantStatus {
  std::string name;
  bool nonconstant = false;
};
struct NondegeneracyReport {
  std::vector<FactorStatus> factors;
  std::vector<NonconstantStatus> nonconstant_checks;
  bool all_ok = true;
};

inline NondegeneracyReport verify_nondegenerate(const TwistConstruction& tc) {
  NondegeneracyReport rep;
  for (const auto& [name, rf] : tc.nondegeneracy_factors) {
    FactorStatus fs{name, !rf.is_zero()};
    if (!fs.nonzero) rep.all_ok = false;
    rep.factors.push_back(std::move(fs));
  }
  for (const auto& [name, rf] : tc.generic_factors) {
    FactorStatus fs{name, !rf.is_zero()};
    if (!fs.nonzero) rep.all_ok = false;
    rep.factors.push_back(std::move(fs));
  }
  rep.nonconstant_checks.push_back({"D", !tc.D.is_constant()});
  for (size_t i = 0; i < tc.points.size(); ++i) {
    rep.nonconstant_checks.push_back(
        {"x" + std::to_string(i + 1), !tc.points[i].first.is_constant()});
    rep.nonconstant_checks.push_back(
        {"y" + std::to_string(i + 1), !tc.points[i].second.is_constant()});
  }
  for (const auto& nc : rep.nonconstant_checks)
    if (!nc.nonconstant) rep.all_ok = false;
  return rep;
}

struct IdentityCheck {
  std::string name;
  bool holds = false;
};
struct AutomorphismReport {
  std::vector<IdentityCheck> checks;
  bool all_hold = true;
};

namespace detail {

inline void push_check(AutomorphismReport& rep, const std::string& name, bool ok) {
  rep.checks.push_back({name, ok});
  if (!ok) rep.all_hold = false;
}

}  // namespace detail

// Coordinate-level automorphism identities over Q(zeta_2m): phi for the
// q2-m-m family with b = c, psi for q2-2m-2m with b = c, chi-bar for m-m-2m
// with a = b.
inline AutomorphismReport verify_automorphism(TwistKind kind, const HyperParams& hp) {
  AutomorphismReport rep;
  const uint64_t n2m = 2 * static_cast<uint64_t>(hp.m);
  const CycQ zeta = CycQ::zeta(n2m);
  const CycQ zeta_m = CycQ::zeta(n2m, 2);
  const CycQ zeta_m_inv = CycQ::zeta(n2m, n2m - 2);
  const CycQ minus1(-1);

  auto lift = [&](const RF& f) { return lift_to_cyclotomic(f, n2m); };

  if (kind == TwistKind::q2_m_m) {
    detail::require(hp.b == hp.c, "parameter mismatch: q2-m-m automorphism needs b = c");
    TwistConstruction tc = build_q2_m_m(hp);
    auto phi = [&](const RFC& g) {
      return monomial_rescale(monomial_rescale(g, VAR_V, zeta), VAR_W, minus1);
    };
    RFC p = lift(*tc.p), q = lift(*tc.q), T = lift(tc.T), D = lift(tc.D);
    detail::push_check(rep, "phi(p) = -p", phi(p) == -p);
    detail::push_check(rep, "phi(q) = q", phi(q) == q);
    detail::push_check(rep, "phi(T) = T", phi(T) == T);
    detail::push_check(rep, "phi(D) = D", phi(D) == D);
    RFC x1 = lift(tc.points[0].first), y1 = lift(tc.points[0].second);
    RFC x2 = lift(tc.points[1].first), y2 = lift(tc.points[1].second);
    RFC x3 = lift(tc.points[2].first), y3 = lift(tc.points[2].second);
    detail::push_check(rep, "phi(P1) = P1", phi(x1) == x1 && phi(y1) == y1);
    detail::push_check(rep, "phi(P2) = (zeta_m^-1*x2, -y2)",
                       phi(x2) == x2 * RFC(zeta_m_inv) && phi(y2) == -y2);
    detail::push_check(rep, "phi(P3) = P3", phi(x3) == x3 && phi(y3) == y3);
    return rep;
  }
  if (kind == TwistKind::q2_2m_2m) {
    detail::require(hp.b == hp.c, "parameter mismatch: q2-2m-2m automorphism needs b = c");
    TwistConstruction tc = build_q2_2m_2m(hp);
    auto psi = [&](const RFC& g) { return monomial_rescale(g, VAR_V, zeta); };
    RFC p = lift(*tc.p), q = lift(*tc.q), T = lift(tc.T), D = lift(tc.D);
    detail::push_check(rep, "psi(p) = p", psi(p) == p);
    detail::push_check(rep, "psi(q) = -q", psi(q) == -q);
    detail::push_check(rep, "psi(T) = T", psi(T) == T);
    detail::push_check(rep, "psi(D) = D", psi(D) == D);
    RFC x1 = lift(tc.points[0].first), y1 = lift(tc.points[0].second);
    RFC x2 = lift(tc.points[1].first), y2 = lift(tc.points[1].second);
    RFC x3 = lift(tc.points[2].first), y3 = lift(tc.points[2].second);
    detail::push_check(rep, "psi(P1) = P1", psi(x1) == x1 && psi(y1) == y1);
    detail::push_check(rep, "psi(P2) = P2", psi(x2) == x2 && psi(y2) == y2);
    detail::push_check(rep, "psi(P3) = (zeta_m*x3, -y3)",
                       psi(x3) == x3 * RFC(zeta_m) && psi(y3) == -y3);
    return rep;
  }
  if (kind == TwistKind::m_m_2m) {
    detail::require(hp.a == hp.b, "parameter mismatch: m-m-2m automorphism needs a = b");
    TwistConstruction tc = build_m_m_2m(hp);
    auto chi = [&](const RFC& g) { return monomial_rescale(g, VAR_U, zeta); };
    RFC p = lift(*tc.p), q = lift(*tc.q), T = lift(tc.T), D = lift(tc.D);
    detail::push_check(rep, "chi(p) = p", chi(p) == p);
    detail::push_check(rep, "chi(q) = -q", chi(q) == -q);
    detail::push_check(rep, "chi(T) = T", chi(T) == T);
    detail::push_check(rep, "chi(D) = D", chi(D) == D);
    RFC x1 = lift(tc.points[0].first), y1 = lift(tc.points[0].second);
    RFC x2 = lift(tc.points[1].first), y2 = lift(tc.points[1].second);
    RFC x3 = lift(tc.points[2].first), y3 = lift(tc.points[2].second);
    detail::push_check(rep, "chi(P1) = P1", chi(x1) == x1 && chi(y1) == y1);
    detail::push_check(rep, "chi(P2) = (zeta_m^-1*x2, -y2)",
                       chi(x2) == x2 * RFC(zeta_m_inv) && chi(y2) == -y2);
    detail::push_check(rep, "chi(P3) = P3", chi(x3) == x3 && chi(y3) == y3);
    return rep;
  }
  throw std::invalid_argument("verify_automorphism: unsupported kind");
}

// ---- specialization ---------------------------------------------------------

struct SpecializedCurve {
  Rat y_coeff;
  unsigned y_exp = 2;
  RF rhs_in_x;
  std::string label;
};

struct SpecializedInstance {
  Rat D_value;
  Rat T_value;
  std::vector<std::pair<Rat, Rat>> points;
  std::vector<SpecializedCurve> curves;
  bool memberships_exact = true;
};

inline SpecializedInstance specialize_construction(const TwistConstruction& tc,
                                                   const std::map<int, Rat>& at) {
  // pole scan first: every component must be finite at the point
  auto eval_checked = [&](const RF& f, const std::string& what) {
    try {
      return evaluate(f, at);
    } catch (const pole_error&) {
      throw pole_error("pole at specialization point in " + what);
    }
  };
  SpecializedInstance inst;
  inst.D_value = eval_checked(tc.D, "D");
  inst.T_value = eval_checked(tc.T, "T");
  for (size_t i = 0; i < tc.points.size(); ++i) {
    Rat xv = eval_checked(tc.points[i].first, "x" + std::to_string(i + 1));
    Rat yv = eval_checked(tc.points[i].second, "y" + std::to_string(i + 1));
    inst.points.emplace_back(xv, yv);
  }
  std::map<int, RF> param_bindings;
  for (const auto& [v, r] : at)
    if (v != VAR_X) param_bindings.emplace(v, RF(r));
  for (const auto& ce : tc.curves) {
    SpecializedCurve sc;
    sc.y_coeff = eval_checked(ce.y_coeff, "curve coefficient");
    sc.y_exp = ce.y_exp;
    try {
      sc.rhs_in_x = substitute(ce.rhs, param_bindings);
    } catch (const zero_denominator_error&) {
      throw pole_error("pole at specialization point in curve right-hand side");
    }
    sc.label = ce.label;
    inst.curves.push_back(std::move(sc));
  }
  // degeneracy scan: the construction's nondegeneracy factors must not vanish
  for (const auto& [name, rf] : tc.nondegeneracy_factors) {
    Rat v;
    try {
      v = evaluate(rf, at);
    } catch (const pole_error&) {
      throw pole_error("pole at specialization point in factor " + name);
    }
    if (v == 0)
      throw degeneracy_error("degeneracy at specialization point: " + name + " vanishes");
  }
  // exact membership of every numeric point on its numeric curve
  for (size_t i = 0; i < inst.points.size() && i < inst.curves.size(); ++i) {
    const auto& [xv, yv] = inst.points[i];
    const auto& sc = inst.curves[i];
    Rat lhs = sc.y_coeff * pow(yv, static_cast<long>(sc.y_exp));
    Rat rhs = evaluate(sc.rhs_in_x, {{VAR_X, xv}});
    if (lhs != rhs) inst.memberships_exact = false;
  }
  return inst;
}

}  // namespace twistforge
