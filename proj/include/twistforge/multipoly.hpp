#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twistforge/cyclotomic.hpp"
#include "twistforge/rational.hpp"

namespace twistforge {

// Fixed variable universe. Graded-lex order with u < v < w < t < x:
// compare total degree first, then exponents from x down to u.
inline constexpr int kNumVars = 5;
inline constexpr int VAR_U = 0;
inline constexpr int VAR_V = 1;
inline constexpr int VAR_W = 2;
inline constexpr int VAR_T = 3;
inline constexpr int VAR_X = 4;
inline constexpr const char* kVarNames[kNumVars] = {"u", "v", "w", "t", "x"};

inline int var_index(char c) {
  switch (c) {
    case 'u': return VAR_U;
    case 'v': return VAR_V;
    case 'w': return VAR_W;
    case 't': return VAR_T;
    case 'x': return VAR_X;
    default: return -1;
  }
}

struct Monomial {
  std::array<uint32_t, kNumVars> e{};

  uint64_t total() const {
    uint64_t s = 0;
    for (auto v : e) s += v;
    return s;
  }
  bool divides(const Monomial& m) const {
    for (int i = 0; i < kNumVars; ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }
  Monomial operator*(const Monomial& m) const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = e[i] + m.e[i];
    return r;
  }
  Monomial operator/(const Monomial& m) const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = e[i] - m.e[i];
    return r;
  }
  bool operator==(const Monomial& m) const { return e == m.e; }
  bool is_one() const { return total() == 0; }
};

struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    uint64_t ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    for (int i = kNumVars - 1; i >= 0; --i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
  }
};

// ---- coefficient-field hooks -----------------------------------------------

inline Rat rat_content_of(const Rat& c) { return abs(c); }
inline Rat rat_content_of(const CycQ& c) {
  Rat g(0);
  for (const auto& x : c.coords()) g = rat_gcd(g, x);
  return g;
}

inline int unit_sign_of(const Rat& c) { return sign(c); }
inline int unit_sign_of(const CycQ& c) {
  for (size_t i = c.dim(); i-- > 0;)
    if (c[i] != 0) return sign(c[i]);
  return 0;
}

inline Rat coeff_div(const Rat& a, const Rat& b) { return a / b; }
inline CycQ coeff_div(const CycQ& a, const CycQ& b) { return a * inverse(b); }

inline Rat coeff_from_long(const Rat&, long v) { return Rat(v); }
inline CycQ coeff_from_long(const CycQ& model, long v) {
  return CycQ(model.conductor(), Rat(v));
}

inline void scale_by_rat(Rat& c, const Rat& s) { c *= s; }
inline void scale_by_rat(CycQ& c, const Rat& s) {
  for (size_t i = 0; i < c.dim(); ++i) c[i] *= s;
}

inline std::string coeff_str(const Rat& c) { return to_string(c); }
inline std::string coeff_str(const CycQ& c) {
  if (c.is_rational()) return to_string(c.rational_part());
  return "(" + c.str() + ")";
}

inline bool coeff_is_negative_unit_display(const Rat& c) { return sign(c) < 0; }
inline bool coeff_is_negative_unit_display(const CycQ& c) {
  return c.is_rational() && sign(c.rational_part()) < 0;
}

// ---- sparse multivariate polynomial ----------------------------------------

template <class K>
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, K, GradedLexLess>;

  MultiPoly() = default;
  explicit MultiPoly(const K& c) {
    if (!coeff_zero(c)) terms_[Monomial{}] = c;
  }
  static MultiPoly constant(const K& c) { return MultiPoly(c); }
  static MultiPoly variable(int var, uint32_t e = 1, K coeff = K(1)) {
    MultiPoly p;
    if (!coeff_zero(coeff)) {
      Monomial m;
      m.e[var] = e;
      p.terms_[m] = std::move(coeff);
    }
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  K constant_value() const {
    if (terms_.empty()) return K(0);
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? K(0) : it->second;
  }
  size_t term_count() const { return terms_.size(); }

  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const K& leading_coeff() const { return terms_.rbegin()->second; }

  uint64_t total_degree() const {
    return terms_.empty() ? 0 : leading_monomial().total();
  }
  uint32_t degree_in(int var) const {
    uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.e[var]);
    return d;
  }
  uint32_t var_mask() const {
    uint32_t mask = 0;
    for (const auto& [m, c] : terms_)
      for (int i = 0; i < kNumVars; ++i)
        if (m.e[i]) mask |= 1u << i;
    return mask;
  }
  bool depends_on(int var) const { return (var_mask() >> var) & 1u; }

  void add_term(const Monomial& m, const K& c) {
    if (coeff_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (coeff_zero(it->second)) terms_.erase(it);
    }
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    // iterate over the smaller operand outside
    const MultiPoly& s = a.term_count() <= b.term_count() ? a : b;
    const MultiPoly& t = a.term_count() <= b.term_count() ? b : a;
    for (const auto& [ms, cs] : s.terms_)
      for (const auto& [mt, ct] : t.terms_) r.add_term(ms * mt, cs * ct);
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

  MultiPoly scaled(const K& c) const {
    MultiPoly r;
    if (coeff_zero(c)) return r;
    for (const auto& [m, v] : terms_) {
      K nv = v * c;
      if (!coeff_zero(nv)) r.terms_[m] = std::move(nv);
    }
    return r;
  }
  MultiPoly mono_shifted(const Monomial& mm) const {
    MultiPoly r;
    for (const auto& [m, v] : terms_) r.terms_[m * mm] = v;
    return r;
  }

  MultiPoly pow(uint64_t e) const {
    MultiPoly r{K(1)};
    if (e == 0) return r;
    MultiPoly b = *this;
    while (e) {
      if (e & 1) r *= b;
      b = (e >>= 1) ? b * b : MultiPoly();
    }
    return r;
  }

  MultiPoly derivative(int var) const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      if (m.e[var] == 0) continue;
      Monomial n = m;
      n.e[var] -= 1;
      r.add_term(n, c * K(static_cast<long>(m.e[var])));
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) {
    return !(a == b);
  }

  // Positive rational content across all coefficients (0 for the zero poly).
  Rat content() const {
    Rat g(0);
    for (const auto& [m, c] : terms_) g = rat_gcd(g, rat_content_of(c));
    return g;
  }
  void scale_rational(const Rat& s) {
    for (auto& [m, c] : terms_) scale_by_rat(c, s);
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      K c = it->second;
      if (!first) {
        if (coeff_is_negative_unit_display(c)) {
          os << " - ";
          c = -c;
        } else {
          os << " + ";
        }
      } else {
        first = false;
        if (coeff_is_negative_unit_display(c)) {
          os << "-";
          c = -c;
        }
      }
      bool unity = (c == K(1));
      bool printed = false;
      if (!unity || it->first.is_one()) {
        os << coeff_str(c);
        printed = true;
      }
      for (int i = 0; i < kNumVars; ++i) {
        uint32_t e = it->first.e[i];
        if (!e) continue;
        if (printed) os << "*";
        os << kVarNames[i];
        if (e > 1) os << "^" << e;
        printed = true;
      }
    }
    return os.str();
  }

 private:
  static bool coeff_zero(const K& c) { return c == K(0); }

  TermMap terms_;
};

template <>
inline bool MultiPoly<CycQ>::coeff_zero(const CycQ& c) {
  return c.is_zero();
}

// Exact division attempt: returns the quotient iff divisor*q == dividend.
template <class K>
std::optional<MultiPoly<K>> try_divide(const MultiPoly<K>& a,
                                       const MultiPoly<K>& b) {
  if (b.is_zero()) return std::nullopt;
  MultiPoly<K> q;
  MultiPoly<K> r = a;
  const Monomial& lmb = b.leading_monomial();
  const K& lcb = b.leading_coeff();
  while (!r.is_zero()) {
    const Monomial& lmr = r.leading_monomial();
    if (!lmb.divides(lmr)) return std::nullopt;
    Monomial mq = lmr / lmb;
    K cq = coeff_div(r.leading_coeff(), lcb);
    MultiPoly<K> t;
    t.add_term(mq, cq);
    q += t;
    r -= t * b;
  }
  return q;
}

template <class K>
MultiPoly<K> divide_exact(const MultiPoly<K>& a, const MultiPoly<K>& b) {
  auto q = try_divide(a, b);
  if (!q) throw std::logic_error("divide_exact: not divisible");
  return *q;
}

namespace detail {

// univariate view: degree in `var` -> coefficient polynomial (var removed)
template <class K>
std::map<uint32_t, MultiPoly<K>> univariate_view(const MultiPoly<K>& p,
                                                 int var) {
  std::map<uint32_t, MultiPoly<K>> out;
  for (const auto& [m, c] : p.terms()) {
    Monomial n = m;
    uint32_t d = n.e[var];
    n.e[var] = 0;
    out[d].add_term(n, c);
  }
  return out;
}

template <class K>
MultiPoly<K> from_univariate_view(const std::map<uint32_t, MultiPoly<K>>& v,
                                  int var) {
  MultiPoly<K> out;
  for (const auto& [d, coeff] : v) {
    Monomial shift;
    shift.e[var] = d;
    out += coeff.mono_shifted(shift);
  }
  return out;
}

}  // namespace detail

template <class K>
MultiPoly<K> poly_gcd(const MultiPoly<K>& a, const MultiPoly<K>& b);

namespace detail {

template <class K>
MultiPoly<K> coeff_gcd_of_view(const std::map<uint32_t, MultiPoly<K>>& v) {
  MultiPoly<K> g;
  for (const auto& [d, c] : v) {
    g = poly_gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

// gcd of a single-term polynomial with an arbitrary one
template <class K>
MultiPoly<K> monomial_gcd(const Monomial& mono, const MultiPoly<K>& b) {
  Monomial g = mono;
  for (const auto& [m, c] : b.terms()) {
    for (int i = 0; i < kNumVars; ++i) g.e[i] = std::min(g.e[i], m.e[i]);
    if (g.total() == 0) break;
  }
  MultiPoly<K> r;
  r.add_term(g, K(1));
  return r;
}

}  // namespace detail

// Multivariate gcd over the coefficient field, content/primitive-part
// recursion with a pseudo-remainder sequence in the top variable. Returned
// gcd is normalized only up to a scalar; callers needing canonical forms
// handle unit normalization themselves.
template <class K>
MultiPoly<K> poly_gcd(const MultiPoly<K>& a, const MultiPoly<K>& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  MultiPoly<K> one{K(1)};
  if (a.is_constant() || b.is_constant()) return one;
  if (a.term_count() == 1)
    return detail::monomial_gcd(a.leading_monomial(), b);
  if (b.term_count() == 1)
    return detail::monomial_gcd(b.leading_monomial(), a);
  uint32_t mask_a = a.var_mask(), mask_b = b.var_mask();
  if ((mask_a & mask_b) == 0) return one;

  // top variable present in both; a variable present in only one operand is
  // pushed into that operand's content
  int var = -1;
  for (int i = kNumVars - 1; i >= 0; --i) {
    if (((mask_a | mask_b) >> i) & 1u) {
      var = i;
      break;
    }
  }
  if (!((mask_a >> var) & 1u)) {
    auto vb = detail::univariate_view(b, var);
    return poly_gcd(a, detail::coeff_gcd_of_view(vb));
  }
  if (!((mask_b >> var) & 1u)) {
    auto va = detail::univariate_view(a, var);
    return poly_gcd(detail::coeff_gcd_of_view(va), b);
  }

  auto va = detail::univariate_view(a, var);
  auto vb = detail::univariate_view(b, var);
  MultiPoly<K> cont_a = detail::coeff_gcd_of_view(va);
  MultiPoly<K> cont_b = detail::coeff_gcd_of_view(vb);
  MultiPoly<K> pa = divide_exact(a, cont_a);
  MultiPoly<K> pb = divide_exact(b, cont_b);
  MultiPoly<K> c = poly_gcd(cont_a, cont_b);

  MultiPoly<K> f = pa, g = pb;
  if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
  while (true) {
    // pseudo-remainder of f by g in `var`
    auto vg = detail::univariate_view(g, var);
    uint32_t dg = vg.rbegin()->first;
    const MultiPoly<K>& lcg = vg.rbegin()->second;
    MultiPoly<K> r = f;
    while (!r.is_zero()) {
      auto vr = detail::univariate_view(r, var);
      uint32_t dr = vr.rbegin()->first;
      if (dr < dg) break;
      Monomial shift;
      shift.e[var] = dr - dg;
      r = r * lcg - vr.rbegin()->second.mono_shifted(shift) * g;
    }
    if (r.is_zero()) {
      // primitive part of g times the content gcd
      auto vgg = detail::univariate_view(g, var);
      MultiPoly<K> cg = detail::coeff_gcd_of_view(vgg);
      return c * divide_exact(g, cg);
    }
    auto vr = detail::univariate_view(r, var);
    if (vr.rbegin()->first == 0) return c;  // gcd free of var
    MultiPoly<K> cr = detail::coeff_gcd_of_view(vr);
    f = g;
    g = divide_exact(r, cr);
  }
}

// Evaluation at a full rational point (all variables the polynomial uses
// must be bound).
template <class K>
K poly_eval(const MultiPoly<K>& p, const std::array<Rat, kNumVars>& at) {
  K acc(0);
  for (const auto& [m, c] : p.terms()) {
    Rat v(1);
    for (int i = 0; i < kNumVars; ++i)
      if (m.e[i]) v *= pow(at[i], static_cast<long>(m.e[i]));
    K term = c;
    scale_by_rat(term, v);
    acc += term;
  }
  return acc;
}

inline MultiPoly<CycQ> lift_to_cyclotomic(const MultiPoly<Rat>& p, uint64_t n) {
  MultiPoly<CycQ> out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, CycQ(n, c));
  return out;
}

using PolyQ = MultiPoly<Rat>;
using PolyC = MultiPoly<CycQ>;

// Spec-level operation: the n-th cyclotomic polynomial as a univariate
// MultiPoly in x over the rationals.
inline PolyQ cyclotomic_polynomial(uint64_t n) {
  auto coeffs = cyclotomic_coeffs(n);
  PolyQ p;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Monomial m;
    m.e[VAR_X] = static_cast<uint32_t>(i);
    p.add_term(m, Rat(coeffs[i]));
  }
  return p;
}

}  // namespace twistforge
