#pragma once

#include <string>
#include <vector>

#include "twistforge/curve_ff.hpp"
#include "twistforge/ratfunc.hpp"

namespace twistforge {

// strips p-th powers from the factorization; for odd p the sign is also a
// p-th power and is normalized away
inline Int normalize_pth_power_free(Int a, uint64_t p) {
  if (a == 0) throw std::invalid_argument("normalize_pth_power_free: a = 0");
  bool neg = a < 0;
  if (neg) a = -a;
  Int out = 1;
  for (const auto& [prime, e] : factorize(a)) out *= pow(prime, e % p);
  if (neg && p % 2 == 0) out = -out;
  return out;
}

// ---- certificates ------------------------------------------------------------

struct TorsionSample {
  uint64_t l = 0;
  std::string flavor;
  Int order;
};

struct TorsionCertificate {
  SuperCurve curve;
  std::vector<TorsionSample> samples;
  Int order_gcd;
  std::string lower_bound_witness;
  bool gcd_divisible_by_p = false;
  bool gcd_divides_2p = false;
  std::vector<std::string> anomalies;
};

namespace detail {

inline bool is_primitive_root_mod(uint64_t l, uint64_t p) {
  return multiplicative_order(l, p) == p - 1;
}

}  // namespace detail

// Samples odd good-reduction primes that are primitive roots mod p, plus the
// two congruence-refined flavors from the torsion-bound argument (l = 1 mod 4
// and l = 1 mod q_aux), computes the Jacobian order at each, and reports the
// gcd together with the unconditional Z/pZ lower bound.
inline TorsionCertificate torsion_bound(const SuperCurve& curve, unsigned prime_budget,
                                        uint64_t prime_ceiling, ZetaEngine& engine) {
  curve.validate();
  if (prime_budget < 3)
    throw std::invalid_argument("torsion_bound: prime_budget >= 3 required");
  const uint64_t p = curve.p;
  const uint64_t q_aux = (p == 3) ? 5 : 3;

  TorsionCertificate cert;
  cert.curve = curve;
  cert.lower_bound_witness =
      "Z/" + std::to_string(p) +
      "Z embeds: D = ((0,0)) - (inf) is not principal and p*D = div(x)";

  auto qualifies = [&](uint64_t l) {
    return l % 2 == 1 && curve.good_reduction(l) && detail::is_primitive_root_mod(l, p);
  };
  std::vector<uint64_t> chosen;
  auto already = [&](uint64_t l) {
    for (uint64_t c : chosen)
      if (c == l) return true;
    return false;
  };
  unsigned per_flavor = (prime_budget + 2) / 3;
  auto collect = [&](unsigned want, auto extra, const std::string& tag) {
    unsigned got = 0;
    for (uint64_t l = 3; l <= prime_ceiling && got < want; l += 2) {
      if (!fq::is_prime_u64(l) || !qualifies(l) || !extra(l) || already(l)) continue;
      chosen.push_back(l);
      cert.samples.push_back({l, tag, Int(0)});
      ++got;
    }
  };
  collect(per_flavor, [&](uint64_t l) { return l % 4 == 1; }, "primitive-root, 1 mod 4");
  collect(per_flavor, [&](uint64_t l) { return l % q_aux == 1; },
          "primitive-root, 1 mod " + std::to_string(q_aux));
  if (cert.samples.size() < prime_budget)
    collect(prime_budget - static_cast<unsigned>(cert.samples.size()),
            [](uint64_t) { return true; }, "primitive-root");
  if (cert.samples.size() < prime_budget)
    throw std::runtime_error("torsion_bound: not enough qualifying primes below ceiling");

  cert.order_gcd = 0;
  for (auto& s : cert.samples) {
    s.order = jacobian_order(curve, s.l, ZetaMethod::newton, engine);
    cert.order_gcd = cert.order_gcd == 0 ? s.order : gcd(cert.order_gcd, s.order);
  }
  cert.gcd_divisible_by_p = cert.order_gcd % static_cast<unsigned long>(p) == 0;
  if (!cert.gcd_divisible_by_p)
    cert.anomalies.push_back("order gcd not divisible by p — lower bound violated");
  cert.gcd_divides_2p = Int(2 * p) % cert.order_gcd == 0;
  if (!cert.gcd_divides_2p)
    cert.anomalies.push_back("order gcd " + to_string(cert.order_gcd) +
                             " does not divide 2p — inspect before trusting");
  return cert;
}

// 2-torsion exists over Q iff p = 7 and m^3 = k^3 = -(m+k)^3 mod 7.
inline bool gr_two_torsion_condition(uint64_t p, uint64_t m, uint64_t k) {
  if (m == 0 || k == 0 || m + k >= p)
    throw std::invalid_argument("gr_two_torsion_condition: require 0 < m, k and m+k < p");
  if (p != 7) return false;
  auto cube = [](uint64_t v) { return v * v % 7 * v % 7; };
  uint64_t c1 = cube(m % 7), c2 = cube(k % 7), c3 = (7 - cube((m + k) % 7)) % 7;
  return c1 == c2 && c2 == c3;
}

// Hyperelliptic special cases: k = 1 has 2-torsion iff a = 2; k = (p-1)/2
// and k = p-2 have it iff a = 2^{p-2}. a is normalized p-th-power-free first.
inline bool two_torsion_special(uint64_t p, uint64_t k, const Int& a_in) {
  if (!fq::is_prime_u64(p) || p < 3)
    throw std::invalid_argument("two_torsion_special: p must be an odd prime");
  if (!(k == 1 || k == (p - 1) / 2 || k == p - 2))
    throw std::invalid_argument(
        "two_torsion_special: k must be one of 1, (p-1)/2, p-2 (the hyperelliptic cases)");
  if (a_in == 0) throw std::invalid_argument("two_torsion_special: a = 0");
  Int a = normalize_pth_power_free(a_in, p);
  if (k == 1) return a == 2;
  return a == pow(Int(2), p - 2);
}

struct TwoTorsionVerdict {
  bool verdict_no_two_torsion = false;
  std::vector<Rat> slopes;
  std::vector<std::string> anomalies;
};

// For odd a and p != 7 the Jacobian is non-ordinary at 2, which rules out
// rational 2-torsion; the computed slopes of P_2 corroborate the mechanism.
inline TwoTorsionVerdict no_two_torsion_odd_a(uint64_t p, int64_t a, uint64_t m,
                                              uint64_t k, ZetaEngine& engine) {
  if (p == 7)
    throw std::invalid_argument(
        "no_two_torsion_odd_a: p = 7 is the excluded (possibly ordinary) case");
  if (a % 2 == 0) throw std::invalid_argument("no_two_torsion_odd_a: a must be odd");
  SuperCurve curve = SuperCurve::minus(p, m, k, a);
  ZetaReport rep = zeta_numerator_newton(curve, 2, engine);
  TwoTorsionVerdict v;
  v.slopes = rep.slopes;
  bool ordinary = true;
  for (const Rat& s : v.slopes)
    if (s != 0 && s != 1) ordinary = false;
  if (ordinary) {
    v.anomalies.push_back(
        "slopes at l = 2 are all in {0,1}: ordinary reduction contradicts the "
        "non-ordinariness criterion — no verdict issued");
    return v;
  }
  v.verdict_no_two_torsion = true;
  return v;
}

// ---- the hyperelliptic equivalences (symbolic) --------------------------------

struct L7Report {
  bool f_maps_into_target = false;
  bool gf_is_identity = false;
  bool sub1_hyperelliptic = false;
  bool sub2_hyperelliptic = false;
  std::string residual;
  bool all() const {
    return f_maps_into_target && gf_is_identity && sub1_hyperelliptic &&
           sub2_hyperelliptic;
  }
};

// Verifies, over the rational function field, that
//   F(x,y) = (a - y^p/(a-x)^{(p-1)/2}, y^{p-2}/(a-x)^{(p-3)/2})
// maps the generic point of y^p = x(a-x)^{(p-1)/2} into y^p = x(a-x)^{p-2},
// that G reverses it, and that the two displayed coordinate substitutions
// turn y^p = x(a-x) and y^p = x(a-x)^{p-2} into the hyperelliptic models
// y^2 = x^p + 4^{p-1} a^2 and y^2 = x^p + (4a)^{p-1}.
inline L7Report verify_l7_equivalences(uint64_t p, const Rat& a,
                                       bool perturb_first_map = false) {
  if (!fq::is_prime_u64(p) || p < 3)
    throw std::invalid_argument("verify_l7_equivalences: p must be an odd prime");
  if (a == 0) throw std::invalid_argument("verify_l7_equivalences: a must be nonzero");
  L7Report rep;
  const long k1 = static_cast<long>((p - 1) / 2);  // source exponent
  const long k2 = static_cast<long>(p - 2);        // target exponent
  RF x = RF::variable(VAR_X);
  RF ax = RF(a) - x;  // a - x
  RF G1 = x * ax.pow(k1);  // y^p on the source curve

  // F = (a - y^p * cX, y^{p-2} * cY), reduced on the source curve
  RF cX = ax.pow(k1).inverse();
  RF cY = ax.pow((static_cast<long>(p) - 3) / 2).inverse();
  if (perturb_first_map) cY = -cY;
  RF X = RF(a) - G1 * cX;                         // y-free after reduction
  RF Yp = cY.pow(static_cast<long>(p)) * G1.pow(k2);  // Y^p reduced

  RF target_rhs = X * (RF(a) - X).pow(k2);
  RF res_i = Yp - target_rhs;
  rep.f_maps_into_target = res_i.is_zero();
  if (!rep.f_maps_into_target) rep.residual = res_i.str();

  // G composed with F: first coordinate a - Y^p/(a-X)^{p-2}, second
  // Y^{(p-1)/2}/(a-X)^{(p-3)/2}; Y^{(p-1)/2} reduces to y * G1^{(p-3)/2} cY^{(p-1)/2}
  {
    RF aX = RF(a) - X;
    RF first = RF(a) - Yp / aX.pow(k2);
    RF second_coeff =
        cY.pow(k1) * G1.pow((static_cast<long>(p) - 3) / 2) / aX.pow((static_cast<long>(p) - 3) / 2);
    rep.gf_is_identity = (first == x) && (second_coeff == RF(Rat(1)));
  }

  // substitution (x,y) -> (y/2^p + a/2, -x/4) into y^p = x(a-x):
  // the pullback is (y^2 - x^p - 4^{p-1} a^2)/4^p exactly
  {
    RF y = RF::variable(VAR_T);
    Rat p4 = pow(Rat(4), static_cast<long>(p));
    RF X1 = y / RF(pow(Rat(2), static_cast<long>(p))) + RF(a / 2);
    RF Y1 = -x / RF(Rat(4));
    RF pullback = Y1.pow(static_cast<long>(p)) - X1 * (RF(a) - X1);
    RF target = y.pow(2) - x.pow(static_cast<long>(p)) -
                RF(pow(Rat(4), static_cast<long>(p - 1)) * a * a);
    rep.sub1_hyperelliptic = pullback * RF(p4) == target;
  }

  // substitution into y^p = x(a-x)^{p-2} with s = y/(2^p a^{(p-1)/2}) - 1/2:
  // pullback = a (4a)^{p(p-2)} s^{p-2} x^{-p(p-1)} * (y^2 - x^p - (4a)^{p-1})
  {
    RF y = RF::variable(VAR_T);
    Rat two_p = pow(Rat(2), static_cast<long>(p));
    Rat a_half = pow(a, static_cast<long>((p - 1) / 2));
    RF s = y / RF(two_p * a_half) - RF(Rat(1, 2));
    RF fourax = RF(Rat(4) * a) / x;  // (4a)/x
    RF X2 = RF(a) - fourax.pow(static_cast<long>(p)) * s;
    RF Y2 = fourax.pow(static_cast<long>(p - 1)) * s;
    RF pullback = Y2.pow(static_cast<long>(p)) - X2 * (RF(a) - X2).pow(k2);
    RF target = y.pow(2) - x.pow(static_cast<long>(p)) -
                RF(pow(Rat(4) * a, static_cast<long>(p - 1)));
    RF cofactor = RF(a) * RF(pow(Rat(4) * a, static_cast<long>(p * (p - 2)))) *
                  s.pow(static_cast<long>(p - 2)) / x.pow(static_cast<long>(p * (p - 1)));
    rep.sub2_hyperelliptic = !cofactor.is_zero() && pullback == cofactor * target;
  }
  return rep;
}

}  // namespace twistforge
