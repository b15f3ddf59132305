#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "twistforge/rational.hpp"

namespace twistforge {

namespace detail {

// Dense univariate polynomials over Z, little-endian coefficients, no
// trailing zeros. Only what the cyclotomic layer needs.
using ZPoly = std::vector<Int>;

inline void zp_trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  zp_trim(c);
  return c;
}

// Exact division by a monic divisor.
inline ZPoly zp_div_monic(ZPoly a, const ZPoly& b) {
  zp_trim(a);
  if (a.empty()) return {};
  if (a.size() < b.size()) throw std::logic_error("zp_div_monic: not divisible");
  ZPoly q(a.size() - b.size() + 1, Int(0));
  for (size_t i = a.size(); i-- >= b.size();) {
    Int c = a[i];
    if (c != 0) {
      size_t shift = i - (b.size() - 1);
      q[shift] = c;
      for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    if (i + 1 == b.size()) break;
  }
  zp_trim(a);
  if (!a.empty()) throw std::logic_error("zp_div_monic: nonzero remainder");
  return q;
}

inline uint64_t euler_phi(uint64_t n) {
  uint64_t r = n;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r -= r / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

}  // namespace detail

// n-th cyclotomic polynomial, little-endian integer coefficients. Computed
// by dividing x^n - 1 by the product of Phi_d over proper divisors d.
inline const detail::ZPoly& cyclotomic_coeffs(uint64_t n) {
  static std::map<uint64_t, detail::ZPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n == 0) throw std::invalid_argument("cyclotomic_coeffs: n >= 1 required");
  detail::ZPoly xn1(n + 1, Int(0));
  xn1[0] = -1;
  xn1[n] = 1;
  detail::ZPoly prod{Int(1)};
  for (uint64_t d = 1; d < n; ++d)
    if (n % d == 0) prod = detail::zp_mul(prod, cyclotomic_coeffs(d));
  return cache.emplace(n, detail::zp_div_monic(xn1, prod)).first->second;
}

// Element of Z[zeta_n] (Coeff = Int) or Q(zeta_n) (Coeff = Rat), stored as
// the residue modulo Phi_n: phi(n) coordinates, little-endian in zeta_n.
// Conductor-1 values are plain rationals and coerce into any conductor, so
// the type models "scalar" cleanly in generic polynomial code.
template <class Coeff>
class Cyc {
 public:
  Cyc() : n_(1), coords_(1, Coeff(0)) {}
  Cyc(long v) : n_(1), coords_(1, Coeff(v)) {}  // NOLINT: implicit by design
  Cyc(uint64_t n, const Coeff& constant)
      : n_(n), coords_(detail::euler_phi(n), Coeff(0)) {
    if (n == 0) throw std::invalid_argument("Cyc: conductor must be >= 1");
    coords_[0] = constant;
  }

  static Cyc with_conductor(uint64_t n) { return Cyc(n, Coeff(0)); }
  static Cyc zeta(uint64_t n, uint64_t power = 1) {
    Cyc z = with_conductor(n);
    std::vector<Coeff> raw(n == 1 ? 1 : n, Coeff(0));
    raw[power % n] = Coeff(1);
    z.coords_ = reduce(std::move(raw), n);
    z.coords_.resize(detail::euler_phi(n), Coeff(0));
    return z;
  }

  uint64_t conductor() const { return n_; }
  size_t dim() const { return coords_.size(); }
  const std::vector<Coeff>& coords() const { return coords_; }
  Coeff& operator[](size_t i) { return coords_[i]; }
  const Coeff& operator[](size_t i) const { return coords_[i]; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
      if (coords_[i] != 0) return false;
    return true;
  }
  const Coeff& rational_part() const { return coords_[0]; }

  // lift a conductor-1 scalar into conductor n
  Cyc promoted(uint64_t n) const {
    if (n_ == n) return *this;
    if (n_ != 1) throw std::invalid_argument("Cyc: conductor mismatch");
    return Cyc(n, coords_[0]);
  }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.n_ == b.n_) return a.coords_ == b.coords_;
    if (a.n_ == 1 && a.is_rational())
      return b.is_rational() && a.coords_[0] == b.coords_[0];
    if (b.n_ == 1 && b.is_rational())
      return a.is_rational() && a.coords_[0] == b.coords_[0];
    throw std::invalid_argument("Cyc: conductor mismatch in comparison");
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  Cyc operator-() const {
    Cyc r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }
  friend Cyc operator+(Cyc a, Cyc b) {
    align(a, b);
    for (size_t i = 0; i < a.coords_.size(); ++i) a.coords_[i] += b.coords_[i];
    return a;
  }
  friend Cyc operator-(Cyc a, Cyc b) {
    align(a, b);
    for (size_t i = 0; i < a.coords_.size(); ++i) a.coords_[i] -= b.coords_[i];
    return a;
  }
  friend Cyc operator*(Cyc a, Cyc b) {
    align(a, b);
    size_t da = a.coords_.size(), db = b.coords_.size();
    std::vector<Coeff> prod(da + db - 1, Coeff(0));
    for (size_t i = 0; i < da; ++i) {
      if (a.coords_[i] == 0) continue;
      for (size_t j = 0; j < db; ++j) prod[i + j] += a.coords_[i] * b.coords_[j];
    }
    Cyc r = with_conductor(a.n_);
    r.coords_ = reduce(std::move(prod), a.n_);
    r.coords_.resize(detail::euler_phi(a.n_), Coeff(0));
    return r;
  }
  Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
  Cyc& operator-=(const Cyc& b) { return *this = *this - b; }
  Cyc& operator*=(const Cyc& b) { return *this = *this * b; }

  friend Cyc operator*(const Cyc& a, const Coeff& s) {
    Cyc r = a;
    for (auto& c : r.coords_) c *= s;
    return r;
  }

  Cyc pow(uint64_t e) const {
    Cyc r(n_, Coeff(1));
    Cyc b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  // Galois action zeta_n -> zeta_n^j for gcd(j, n) = 1.
  Cyc galois(uint64_t j) const {
    j %= n_;
    if (std::gcd(j, n_) != 1)
      throw std::invalid_argument("galois: index not coprime to conductor");
    std::vector<Coeff> prod(n_ == 1 ? 1 : n_, Coeff(0));
    for (size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == 0) continue;
      prod[(i * j) % n_] += coords_[i];
    }
    Cyc r = with_conductor(n_);
    r.coords_ = reduce(std::move(prod), n_);
    r.coords_.resize(detail::euler_phi(n_), Coeff(0));
    return r;
  }

  Cyc conjugate() const { return galois(n_ == 1 ? 1 : n_ - 1); }

  // Product over all Galois conjugates; a rational integer for Coeff = Int.
  Coeff norm() const {
    Cyc acc(n_, Coeff(1));
    for (uint64_t j = 1; j <= n_; ++j) {
      if (std::gcd(j, n_) != 1) continue;
      acc *= galois(j);
    }
    if (!acc.is_rational())
      throw std::logic_error("norm: product of conjugates not rational");
    return acc.rational_part();
  }

  std::string str(const std::string& gen = "z") const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == 0) continue;
      Coeff c = coords_[i];
      if (!first) {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
      } else {
        if (c < 0 && i > 0) {
          os << "-";
          c = -c;
        }
        first = false;
      }
      if (i == 0) {
        os << to_string(c);
      } else {
        if (!(c == 1)) os << to_string(c) << "*";
        os << gen << n_;
        if (i > 1) os << "^" << i;
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  static void align(Cyc& a, Cyc& b) {
    if (a.n_ == b.n_) return;
    if (a.n_ == 1)
      a = a.promoted(b.n_);
    else if (b.n_ == 1)
      b = b.promoted(a.n_);
    else
      throw std::invalid_argument("Cyc: conductor mismatch");
  }

  static std::vector<Coeff> reduce(std::vector<Coeff> v, uint64_t n) {
    const auto& phi = cyclotomic_coeffs(n);
    size_t deg = phi.size() - 1;  // monic of degree phi(n)
    while (v.size() > deg) {
      Coeff c = v.back();
      v.pop_back();
      if (c == 0) continue;
      size_t shift = v.size() - deg;
      for (size_t j = 0; j < deg; ++j) v[shift + j] -= c * Coeff(phi[j]);
    }
    return v;
  }

  uint64_t n_;
  std::vector<Coeff> coords_;
};

using CycInt = Cyc<Int>;
using CycQ = Cyc<Rat>;

// Inverse in Q(zeta_n) via the extended Euclidean algorithm against Phi_n.
inline CycQ inverse(const CycQ& z) {
  if (z.is_zero()) throw zero_denominator_error("cyclotomic inverse of zero");
  uint64_t n = z.conductor();
  using QP = std::vector<Rat>;
  auto trim = [](QP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  };
  const auto& phi_z = cyclotomic_coeffs(n);
  QP r0(phi_z.size());
  for (size_t i = 0; i < phi_z.size(); ++i) r0[i] = Rat(phi_z[i]);
  QP r1(z.coords().begin(), z.coords().end());
  trim(r1);
  QP s0{}, s1{Rat(1)};  // Bezout coefficients of z
  while (true) {
    QP rem = r0;
    trim(rem);
    QP q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1, Rat(0));
    while (rem.size() >= r1.size() && !rem.empty()) {
      Rat c = rem.back() / r1.back();
      size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= c * r1[j];
      trim(rem);
    }
    QP qs(q.size() + (s1.empty() ? 1 : s1.size()), Rat(0));
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
    }
    QP s2(std::max(s0.size(), qs.size()), Rat(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    trim(s2);
    if (rem.empty()) {
      if (r1.size() != 1)
        throw std::logic_error("cyclotomic inverse: element not invertible");
      CycQ out = CycQ::with_conductor(n);
      for (size_t i = 0; i < s1.size() && i < out.dim(); ++i)
        out[i] = s1[i] / r1[0];
      return out;
    }
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
}

inline CycQ to_rational_coeffs(const CycInt& z) {
  CycQ r = CycQ::with_conductor(z.conductor());
  for (size_t i = 0; i < z.dim(); ++i) r[i] = Rat(z[i]);
  return r;
}

}  // namespace twistforge
