#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistforge::fq {

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<uint64_t> prime_factors_u64(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline uint64_t pow_mod_u64(uint64_t b, uint64_t e, uint64_t m) {
  __uint128_t acc = 1, base = b % m;
  while (e) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<uint64_t>(acc);
}

inline uint64_t smallest_primitive_root(uint64_t l) {
  if (l == 2) return 1;
  auto fs = prime_factors_u64(l - 1);
  for (uint64_t g = 2; g < l; ++g) {
    bool ok = true;
    for (uint64_t f : fs)
      if (pow_mod_u64(g, (l - 1) / f, l) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

// F_{l^d} with a fixed monic irreducible modulus; elements are little-endian
// coefficient vectors of length d.
struct Field {
  uint64_t l = 2;
  unsigned d = 1;
  std::vector<uint64_t> modulus;  // size d+1, monic; {0, 1} for the prime field
  uint64_t q = 2;
  std::vector<uint64_t> generator;  // multiplicative generator, size d

  using Elem = std::vector<uint64_t>;

  Elem zero() const { return Elem(d, 0); }
  Elem one() const {
    Elem e(d, 0);
    e[0] = 1;
    return e;
  }
  Elem from_int(int64_t v) const {
    Elem e(d, 0);
    int64_t r = v % static_cast<int64_t>(l);
    if (r < 0) r += static_cast<int64_t>(l);
    e[0] = static_cast<uint64_t>(r);
    return e;
  }
  bool is_zero(const Elem& a) const {
    for (auto c : a)
      if (c) return false;
    return true;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r(d);
    for (unsigned i = 0; i < d; ++i) {
      uint64_t s = a[i] + b[i];
      r[i] = s >= l ? s - l : s;
    }
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(d);
    for (unsigned i = 0; i < d; ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + l - b[i];
    return r;
  }
  Elem neg(const Elem& a) const { return sub(zero(), a); }
  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<__uint128_t> prod(2 * d - 1, 0);
    for (unsigned i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (unsigned j = 0; j < d; ++j) prod[i + j] += static_cast<__uint128_t>(a[i]) * b[j];
    }
    // reduce modulo the monic modulus
    for (unsigned i = 2 * d - 2; i >= d && i < 2 * d; --i) {
      uint64_t c = static_cast<uint64_t>(prod[i] % l);
      if (!c) continue;
      unsigned shift = i - d;
      for (unsigned j = 0; j < d; ++j) {
        __uint128_t sb = static_cast<__uint128_t>(c) * modulus[j] % l;
        prod[shift + j] += static_cast<__uint128_t>(l) - sb;
      }
    }
    Elem r(d);
    for (unsigned i = 0; i < d; ++i) r[i] = static_cast<uint64_t>(prod[i] % l);
    return r;
  }
  Elem pow(Elem b, uint64_t e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  uint64_t encode(const Elem& a) const {
    uint64_t idx = 0;
    for (unsigned i = d; i-- > 0;) idx = idx * l + a[i];
    return idx;
  }
  Elem decode(uint64_t idx) const {
    Elem a(d);
    for (unsigned i = 0; i < d; ++i) {
      a[i] = idx % l;
      idx /= l;
    }
    return a;
  }
};

namespace detail {

// dense polynomial helpers modulo a prime, for the irreducibility search
using ModPoly = std::vector<uint64_t>;

inline void mp_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& h, uint64_t l) {
  if (a.empty() || b.empty()) return {};
  std::vector<__uint128_t> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) prod[i + j] += static_cast<__uint128_t>(a[i]) * b[j];
  }
  ModPoly r(prod.size());
  for (size_t i = 0; i < prod.size(); ++i) r[i] = static_cast<uint64_t>(prod[i] % l);
  // reduce by monic h
  size_t dh = h.size() - 1;
  for (size_t i = r.size(); i-- > dh;) {
    uint64_t c = r[i];
    if (!c) continue;
    r[i] = 0;
    size_t shift = i - dh;
    for (size_t j = 0; j < dh; ++j) {
      uint64_t sb = static_cast<uint64_t>(static_cast<__uint128_t>(c) * h[j] % l);
      r[shift + j] = (r[shift + j] + l - sb) % l;
    }
  }
  mp_trim(r);
  return r;
}

inline ModPoly mp_xpowmod(uint64_t e, const ModPoly& h, uint64_t l) {
  ModPoly r{1};
  ModPoly b{0, 1};
  if (h.size() == 2) {  // degree-1 modulus: x reduces to a constant
    b = mp_mulmod(ModPoly{1}, ModPoly{0, 1}, h, l);
  }
  while (e) {
    if (e & 1) r = mp_mulmod(r, b, h, l);
    b = mp_mulmod(b, b, h, l);
    e >>= 1;
  }
  return r;
}

inline ModPoly mp_gcd(ModPoly a, ModPoly b, uint64_t l) {
  mp_trim(a);
  mp_trim(b);
  while (!b.empty()) {
    // a mod b
    uint64_t inv_lead = pow_mod_u64(b.back(), l - 2, l);
    ModPoly r = a;
    while (r.size() >= b.size() && !r.empty()) {
      uint64_t c = static_cast<uint64_t>(static_cast<__uint128_t>(r.back()) * inv_lead % l);
      size_t shift = r.size() - b.size();
      for (size_t j = 0; j < b.size(); ++j) {
        uint64_t sb = static_cast<uint64_t>(static_cast<__uint128_t>(c) * b[j] % l);
        r[shift + j] = (r[shift + j] + l - sb) % l;
      }
      mp_trim(r);
    }
    a = b;
    b = r;
  }
  return a;
}

inline bool mp_irreducible(const ModPoly& h, uint64_t l) {
  size_t deg = h.size() - 1;
  // x^{l^deg} == x mod h
  uint64_t e = 1;
  for (size_t i = 0; i < deg; ++i) e *= l;
  ModPoly xq = mp_xpowmod(e, h, l);
  ModPoly x{0, 1};
  mp_trim(x);
  if (xq != x) return false;
  for (uint64_t r : prime_factors_u64(static_cast<uint64_t>(deg))) {
    uint64_t er = 1;
    for (size_t i = 0; i < deg / r; ++i) er *= l;
    ModPoly xr = mp_xpowmod(er, h, l);
    // gcd(x^{l^{deg/r}} - x, h) must be 1
    ModPoly diff = xr;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + l - 1) % l;
    mp_trim(diff);
    ModPoly g = mp_gcd(h, diff, l);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

inline Field make_prime_field(uint64_t l) {
  if (!is_prime_u64(l)) throw std::invalid_argument("make_prime_field: l not prime");
  Field f;
  f.l = l;
  f.d = 1;
  f.modulus = {0, 1};
  f.q = l;
  f.generator = {smallest_primitive_root(l)};
  return f;
}

// Deterministic modulus: the first monic irreducible of degree d in base-l
// counting order of the lower coefficients.
inline Field make_ext_field(uint64_t l, unsigned d) {
  if (!is_prime_u64(l)) throw std::invalid_argument("make_ext_field: l not prime");
  if (d == 0) throw std::invalid_argument("make_ext_field: degree must be >= 1");
  if (d == 1) return make_prime_field(l);
  Field f;
  f.l = l;
  f.d = d;
  f.q = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (f.q > (static_cast<uint64_t>(1) << 62) / l)
      throw std::invalid_argument("make_ext_field: field too large");
    f.q *= l;
  }
  detail::ModPoly h(d + 1, 0);
  h[d] = 1;
  bool found = false;
  for (uint64_t k = 0; k < f.q; ++k) {
    uint64_t t = k;
    for (unsigned i = 0; i < d; ++i) {
      h[i] = t % l;
      t /= l;
    }
    if (detail::mp_irreducible(h, l)) {
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("no irreducible modulus found");
  f.modulus.assign(h.begin(), h.end());

  auto factors = prime_factors_u64(f.q - 1);
  for (uint64_t idx = 1; idx < f.q; ++idx) {
    Field::Elem cand = f.decode(idx);
    bool ok = true;
    for (uint64_t r : factors) {
      Field::Elem p = f.pow(cand, (f.q - 1) / r);
      if (p == f.one()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      f.generator = cand;
      break;
    }
  }
  if (f.generator.empty()) throw std::logic_error("no field generator found");
  return f;
}

// Discrete logs modulo p for every nonzero element, built by one walk
// through the powers of the generator. log_mod_p[encode(x)] = dlog(x) mod p,
// 0xFF marks the zero element.
struct ResidueTable {
  uint64_t q = 0;
  uint32_t p = 0;
  std::vector<uint8_t> log_mod_p;

  static constexpr uint8_t kZero = 0xFF;
};

inline ResidueTable build_residue_table(const Field& f, uint32_t p) {
  if ((f.q - 1) % p != 0)
    throw std::invalid_argument("build_residue_table: p does not divide q-1");
  ResidueTable t;
  t.q = f.q;
  t.p = p;
  t.log_mod_p.assign(f.q, ResidueTable::kZero);
  Field::Elem cur = f.one();
  uint32_t lg = 0;
  for (uint64_t i = 0; i + 1 < f.q; ++i) {
    t.log_mod_p[f.encode(cur)] = static_cast<uint8_t>(lg);
    cur = f.mul(cur, f.generator);
    if (++lg == p) lg = 0;
  }
  return t;
}

}  // namespace twistforge::fq
