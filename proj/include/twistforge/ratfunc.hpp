#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "twistforge/multipoly.hpp"

namespace twistforge {

// Unnormalized fraction of polynomials. Used internally wherever a chain of
// exact operations ends in a zero test; keeps gcds out of the hot path.
template <class K>
struct RawFrac {
  MultiPoly<K> num;
  MultiPoly<K> den{K(1)};

  static RawFrac from_poly(MultiPoly<K> p) { return {std::move(p), MultiPoly<K>{K(1)}}; }

  bool num_is_zero() const { return num.is_zero(); }

  friend RawFrac operator*(const RawFrac& a, const RawFrac& b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend RawFrac operator+(const RawFrac& a, const RawFrac& b) {
    if (a.num.is_zero()) return b;
    if (b.num.is_zero()) return a;
    if (a.den == b.den) return {a.num + b.num, a.den};
    if (auto q = try_divide(b.den, a.den)) return {a.num * *q + b.num, b.den};
    if (auto q = try_divide(a.den, b.den)) return {a.num + b.num * *q, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend RawFrac operator-(const RawFrac& a, const RawFrac& b) {
    return a + RawFrac{-b.num, b.den};
  }
  RawFrac pow(long e) const {
    if (e < 0) {
      if (num.is_zero()) throw zero_denominator_error("RawFrac: 0^negative");
      return RawFrac{den, num}.pow(-e);
    }
    return {num.pow(static_cast<uint64_t>(e)), den.pow(static_cast<uint64_t>(e))};
  }
};

namespace detail {

inline void unit_normalize(MultiPoly<Rat>& num, MultiPoly<Rat>& den) {
  // scale the pair jointly integer-primitive, then fix the sign of den
  Rat c = rat_gcd(num.content(), den.content());
  if (c != 0 && c != 1) {
    Rat s = Rat(1) / c;
    num.scale_rational(s);
    den.scale_rational(s);
  }
  if (unit_sign_of(den.leading_coeff()) < 0) {
    num = -num;
    den = -den;
  }
}

inline void unit_normalize(MultiPoly<CycQ>& num, MultiPoly<CycQ>& den) {
  const CycQ& lc = den.leading_coeff();
  if (lc == CycQ(1)) return;
  CycQ s = inverse(lc);
  num = num.scaled(s);
  den = den.scaled(s);
}

}  // namespace detail

// Canonical quotient of multivariate polynomials: gcd(num, den) is a unit
// and den is unit-normalized (integer-primitive with positive leading sign
// over Q; monic over a cyclotomic field). Structural equality is equality.
template <class K>
class RatFunc {
 public:
  RatFunc() : num_(), den_(K(1)) {}
  RatFunc(const K& c) : num_(c), den_(K(1)) {}  // NOLINT: scalar embedding
  explicit RatFunc(MultiPoly<K> p) : num_(std::move(p)), den_(K(1)) {}
  RatFunc(MultiPoly<K> num, MultiPoly<K> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw zero_denominator_error("RatFunc: zero denominator");
    normalize_full();
  }

  static RatFunc variable(int var) {
    return RatFunc(MultiPoly<K>::variable(var));
  }

  const MultiPoly<K>& num() const { return num_; }
  const MultiPoly<K>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  uint32_t var_mask() const { return num_.var_mask() | den_.var_mask(); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    MultiPoly<K> d = poly_gcd(a.den_, b.den_);
    RatFunc r;
    if (d.is_constant()) {
      r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
      if (r.num_.is_zero()) return RatFunc();
      r.den_ = a.den_ * b.den_;
      detail::unit_normalize(r.num_, r.den_);
      return r;
    }
    MultiPoly<K> t = divide_exact(a.den_, d);
    MultiPoly<K> s = divide_exact(b.den_, d);
    r.num_ = a.num_ * s + b.num_ * t;
    if (r.num_.is_zero()) return RatFunc();
    r.den_ = a.den_ * s;
    MultiPoly<K> g = poly_gcd(r.num_, d);
    if (!g.is_constant()) {
      r.num_ = divide_exact(r.num_, g);
      r.den_ = divide_exact(r.den_, g);
    }
    detail::unit_normalize(r.num_, r.den_);
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    MultiPoly<K> g1 = poly_gcd(a.num_, b.den_);
    MultiPoly<K> g2 = poly_gcd(b.num_, a.den_);
    RatFunc r;
    const bool c1 = g1.is_constant(), c2 = g2.is_constant();
    r.num_ = (c1 ? a.num_ : divide_exact(a.num_, g1)) *
             (c2 ? b.num_ : divide_exact(b.num_, g2));
    r.den_ = (c2 ? a.den_ : divide_exact(a.den_, g2)) *
             (c1 ? b.den_ : divide_exact(b.den_, g1));
    detail::unit_normalize(r.num_, r.den_);
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    return a * b.inverse();
  }
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

  RatFunc inverse() const {
    if (num_.is_zero()) throw zero_denominator_error("RatFunc: inverse of zero");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    detail::unit_normalize(r.num_, r.den_);
    return r;
  }

  // gcd(num,den) = 1 implies gcd(num^e, den^e) = 1, so no gcd is needed.
  RatFunc pow(long e) const {
    if (e == 0) return RatFunc(K(1));
    if (e < 0) return inverse().pow(-e);
    RatFunc r;
    r.num_ = num_.pow(static_cast<uint64_t>(e));
    r.den_ = den_.pow(static_cast<uint64_t>(e));
    detail::unit_normalize(r.num_, r.den_);
    return r;
  }

  RawFrac<K> raw() const { return {num_, den_}; }

  std::string str() const {
    if (den_ == MultiPoly<K>{K(1)}) return num_.str();
    std::string n = num_.str(), d = den_.str();
    if (num_.term_count() > 1) n = "(" + n + ")";
    if (den_.term_count() > 1 || !den_.is_constant()) d = "(" + d + ")";
    return n + "/" + d;
  }

  static RatFunc from_raw(RawFrac<K> f) {
    return RatFunc(std::move(f.num), std::move(f.den));
  }

  // For images of already-reduced pairs under ring maps that preserve
  // coprimality (field lifts, Galois maps, variable rescaling). Skips the
  // gcd and only restores the unit convention.
  static RatFunc from_reduced(MultiPoly<K> num, MultiPoly<K> den) {
    if (den.is_zero()) throw zero_denominator_error("RatFunc: zero denominator");
    RatFunc r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    if (r.num_.is_zero()) {
      r.den_ = MultiPoly<K>{K(1)};
      return r;
    }
    detail::unit_normalize(r.num_, r.den_);
    return r;
  }

 private:
  void normalize_full() {
    if (num_.is_zero()) {
      den_ = MultiPoly<K>{K(1)};
      return;
    }
    MultiPoly<K> g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
    detail::unit_normalize(num_, den_);
  }

  MultiPoly<K> num_;
  MultiPoly<K> den_;
};

using RF = RatFunc<Rat>;
using RFC = RatFunc<CycQ>;

// Spec-level ratfunc_normalize.
template <class K>
RatFunc<K> ratfunc_normalize(MultiPoly<K> num, MultiPoly<K> den) {
  return RatFunc<K>(std::move(num), std::move(den));
}

// ---- substitution & evaluation ----------------------------------------------

// exact composition: substitute bound variables by rational functions,
// unbound variables pass through
template <class K>
RatFunc<K> substitute(const RatFunc<K>& f,
                      const std::map<int, RatFunc<K>>& bindings) {
  auto subst_poly = [&](const MultiPoly<K>& p) -> RawFrac<K> {
    std::map<std::pair<int, uint32_t>, RawFrac<K>> powers;
    auto bound_power = [&](int var, uint32_t e) -> const RawFrac<K>& {
      auto key = std::make_pair(var, e);
      auto it = powers.find(key);
      if (it == powers.end())
        it = powers.emplace(key, bindings.at(var).raw().pow(e)).first;
      return it->second;
    };
    RawFrac<K> acc = RawFrac<K>::from_poly(MultiPoly<K>());
    for (const auto& [m, c] : p.terms()) {
      Monomial passthrough;
      RawFrac<K> term = RawFrac<K>::from_poly(MultiPoly<K>::constant(c));
      for (int i = 0; i < kNumVars; ++i) {
        if (!m.e[i]) continue;
        if (bindings.count(i)) {
          term = term * bound_power(i, m.e[i]);
        } else {
          passthrough.e[i] = m.e[i];
        }
      }
      if (!passthrough.is_one()) {
        MultiPoly<K> mono;
        mono.add_term(passthrough, K(1));
        term.num = term.num * mono;
      }
      acc = acc + term;
    }
    return acc;
  };
  RawFrac<K> top = subst_poly(f.num());
  RawFrac<K> bottom = subst_poly(f.den());
  if (bottom.num_is_zero())
    throw zero_denominator_error("substitute: denominator identically zero");
  return RatFunc<K>(top.num * bottom.den, top.den * bottom.num);
}

// specialize all variables to rationals; the denominator must not vanish
template <class K>
K evaluate(const RatFunc<K>& f, const std::map<int, Rat>& point) {
  std::array<Rat, kNumVars> at{};
  uint32_t bound_mask = 0;
  for (const auto& [v, r] : point) {
    at[v] = r;
    bound_mask |= 1u << v;
  }
  if ((f.var_mask() & ~bound_mask) != 0)
    throw std::invalid_argument("evaluate: unbound variable");
  K dv = poly_eval(f.den(), at);
  if (dv == K(0))
    throw pole_error("evaluate: denominator vanishes at point");
  K nv = poly_eval(f.num(), at);
  return coeff_div(nv, dv);
}

// substitution var -> scalar * var (automorphism actions on coordinates);
// multiplies each term's coefficient by scalar^e without re-expanding
template <class K>
MultiPoly<K> monomial_rescale(const MultiPoly<K>& p, int var, const K& scalar) {
  MultiPoly<K> out;
  std::map<uint32_t, K> pw;
  for (const auto& [m, c] : p.terms()) {
    uint32_t e = m.e[var];
    if (e == 0) {
      out.add_term(m, c);
      continue;
    }
    auto it = pw.find(e);
    if (it == pw.end()) {
      K s = scalar;
      K acc = K(1);
      uint32_t b = e;
      while (b) {
        if (b & 1) acc *= s;
        b >>= 1;
        if (b) s *= s;
      }
      it = pw.emplace(e, acc).first;
    }
    out.add_term(m, c * it->second);
  }
  return out;
}

template <class K>
RatFunc<K> monomial_rescale(const RatFunc<K>& f, int var, const K& scalar) {
  if (scalar == K(0)) throw std::invalid_argument("monomial_rescale: zero scalar");
  return RatFunc<K>::from_reduced(monomial_rescale(f.num(), var, scalar),
                                  monomial_rescale(f.den(), var, scalar));
}

// coefficient-wise Galois action zeta_n -> zeta_n^j
inline PolyC galois_map(const PolyC& p, uint64_t j) {
  PolyC out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, c.galois(j));
  return out;
}

inline RFC apply_root_automorphism(const RFC& f, uint64_t j) {
  uint64_t n = 1;
  for (const auto& [m, c] : f.num().terms()) n = std::max(n, c.conductor());
  for (const auto& [m, c] : f.den().terms()) n = std::max(n, c.conductor());
  if (std::gcd(j % n, n) != 1)
    throw std::invalid_argument("apply_root_automorphism: j not coprime to conductor");
  return RFC::from_reduced(galois_map(f.num(), j), galois_map(f.den(), j));
}

inline RF apply_root_automorphism(const RF& f, uint64_t) { return f; }

inline RFC lift_to_cyclotomic(const RF& f, uint64_t n) {
  return RFC::from_reduced(lift_to_cyclotomic(f.num(), n),
                           lift_to_cyclotomic(f.den(), n));
}

// square-free test for univariate f: gcd(f, f') constant
inline bool is_squarefree_in(const PolyQ& f, int var) {
  if (f.is_zero()) return false;
  PolyQ d = f.derivative(var);
  if (d.is_zero()) return f.is_constant();
  return poly_gcd(f, d).is_constant();
}

}  // namespace twistforge
