#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistforge {

// Arbitrary-precision integers and rationals. mpq_class keeps the canonical
// form we require: gcd(|num|, den) = 1, den > 0, zero stored as 0/1.
using Int = mpz_class;
using Rat = mpq_class;

struct zero_denominator_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct pole_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int sign(const Rat& r) { return mpq_sgn(r.get_mpq_t()); }
inline int sign(const Int& z) { return mpz_sgn(z.get_mpz_t()); }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) throw zero_denominator_error("0 raised to negative power");
    return Rat(0);
  }
  Rat r;
  unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), ae);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), ae);
  if (e < 0) mpq_inv(r.get_mpq_t(), r.get_mpq_t());
  return r;
}

// gcd on Q: gcd of numerators over lcm of denominators. Used for content
// normalization of polynomial coefficient sets.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Rat r(gcd(Int(a.get_num()), Int(b.get_num())),
        lcm(Int(a.get_den()), Int(b.get_den())));
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}
inline bool is_probable_prime(uint64_t n) { return is_probable_prime(Int(static_cast<unsigned long>(n))); }

// Exact square root of a rational if it is a perfect square.
inline bool rat_sqrt(const Rat& r, Rat& out) {
  if (sign(r) < 0) return false;
  Int num(r.get_num()), den(r.get_den());
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  Int sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  out = Rat(sn, sd);
  out.canonicalize();
  return true;
}

// Prime factorization by trial division; for the small integers that occur
// in twist admissibility checks and p-th-power-free normalization.
inline std::vector<std::pair<Int, unsigned>> factorize(Int n) {
  std::vector<std::pair<Int, unsigned>> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (Int d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace twistforge
