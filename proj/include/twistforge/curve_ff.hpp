#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "twistforge/cyclotomic.hpp"
#include "twistforge/finite_field.hpp"
#include "twistforge/rational.hpp"

namespace twistforge {

struct bad_reduction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct field_too_large_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// y^p = x^m (a-x)^k  (MINUS)  or  y^p = x^m (x+a)  (PLUS, k = 1)
struct SuperCurve {
  enum class Form { minus_form, plus_form };

  uint64_t p = 5;
  uint64_t m = 1;
  uint64_t k = 1;
  int64_t a = 1;
  Form form = Form::minus_form;

  static SuperCurve minus(uint64_t p, uint64_t m, uint64_t k, int64_t a) {
    SuperCurve c{p, m, k, a, Form::minus_form};
    c.validate();
    return c;
  }
  static SuperCurve plus(uint64_t p, uint64_t m, int64_t a) {
    SuperCurve c{p, m, 1, a, Form::plus_form};
    c.validate();
    return c;
  }

  void validate() const {
    if (p < 3 || !fq::is_prime_u64(p))
      throw std::invalid_argument("p must be an odd prime");
    if (a == 0) throw std::invalid_argument("a must be nonzero");
    if (form == Form::minus_form) {
      if (m == 0 || k == 0) throw std::invalid_argument("m, k must be positive");
      if (m + k >= p) throw std::invalid_argument("m + k < p required");
    } else {
      if (k != 1) throw std::invalid_argument("plus form has k = 1");
      if (m == 0 || m >= p) throw std::invalid_argument("0 < m < p required");
    }
  }

  uint64_t genus() const { return (p - 1) / 2; }

  bool good_reduction(uint64_t l) const {
    if (!fq::is_prime_u64(l)) return false;
    if (l == p) return false;
    int64_t r = a % static_cast<int64_t>(l);
    return r != 0;
  }
  void require_good_reduction(uint64_t l) const {
    if (!good_reduction(l))
      throw bad_reduction_error("bad reduction at l = " + std::to_string(l));
  }

  // x -> -x, y -> -y identifies y^p = x^m(x+a) with y^p = x^m(a-x)
  SuperCurve as_minus() const {
    if (form == Form::minus_form) return *this;
    if (m + 1 >= p)
      throw std::invalid_argument(
          "plus-form curve with m = p-1 has no minus-form model with m+k < p");
    return minus(p, m, 1, a);
  }

  std::string str() const {
    std::ostringstream os;
    os << "p=" << p << " m=" << m << " k=" << k << " a=" << a
       << " form=" << (form == Form::minus_form ? "minus" : "plus");
    return os.str();
  }
};

inline SuperCurve parse_curve(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::map<std::string, std::string> kv;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw parse_error("curve spec: expected key=value, got '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto geti = [&](const std::string& key, long long defv, bool required) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (required) throw parse_error("curve spec: missing " + key);
      return defv;
    }
    try {
      size_t pos = 0;
      long long v = std::stoll(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw parse_error("curve spec: bad integer for " + key);
    }
  };
  long long p = geti("p", 0, true);
  long long m = geti("m", 0, true);
  long long k = geti("k", 1, false);
  long long a = geti("a", 0, true);
  std::string form = kv.count("form") ? kv["form"] : "minus";
  if (p < 3 || p % 2 == 0 || !fq::is_prime_u64(static_cast<uint64_t>(p)))
    throw parse_error("curve spec: p must be an odd prime");
  if (m <= 0) throw parse_error("curve spec: m must be positive");
  if (k <= 0) throw parse_error("curve spec: k must be positive");
  if (a == 0) throw parse_error("curve spec: a must be nonzero");
  SuperCurve c;
  c.p = static_cast<uint64_t>(p);
  c.m = static_cast<uint64_t>(m);
  c.k = static_cast<uint64_t>(k);
  c.a = a;
  if (form == "minus")
    c.form = SuperCurve::Form::minus_form;
  else if (form == "plus")
    c.form = SuperCurve::Form::plus_form;
  else
    throw parse_error("curve spec: form must be plus or minus");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string("curve spec: ") + e.what());
  }
  return c;
}

// Spec-facing field contexts.
struct PrimeFieldCtx {
  fq::Field field;
  uint64_t l() const { return field.l; }
  uint64_t generator() const { return field.generator[0]; }
  static PrimeFieldCtx make(uint64_t l) { return {fq::make_prime_field(l)}; }
};
struct ExtFieldCtx {
  fq::Field field;
  uint64_t l() const { return field.l; }
  unsigned degree() const { return field.d; }
  const std::vector<uint64_t>& modulus() const { return field.modulus; }
  static ExtFieldCtx make(uint64_t l, unsigned d) { return {fq::make_ext_field(l, d)}; }
};

// Caches field contexts and discrete-log tables across zeta computations.
// Not thread-safe; use one engine per worker.
struct ZetaEngine {
  uint64_t table_index_bound = uint64_t(1) << 24;
  std::map<std::pair<uint64_t, unsigned>, fq::Field> fields;
  std::map<std::tuple<uint64_t, unsigned, uint32_t>, fq::ResidueTable> tables;

  const fq::Field& field(uint64_t l, unsigned d) {
    auto key = std::make_pair(l, d);
    auto it = fields.find(key);
    if (it == fields.end()) it = fields.emplace(key, fq::make_ext_field(l, d)).first;
    return it->second;
  }
  const fq::ResidueTable& table(const fq::Field& f, uint32_t p) {
    if (f.q > table_index_bound)
      throw field_too_large_error("field of size " + std::to_string(f.q) +
                                  " exceeds the enumeration bound");
    auto key = std::make_tuple(f.l, f.d, p);
    auto it = tables.find(key);
    if (it == tables.end()) it = tables.emplace(key, fq::build_residue_table(f, p)).first;
    return it->second;
  }
};

namespace detail {

inline fq::Field::Elem curve_second_factor(const SuperCurve& c, const fq::Field& f,
                                           const fq::Field::Elem& x,
                                           const fq::Field::Elem& a_elem) {
  return c.form == SuperCurve::Form::minus_form ? f.sub(a_elem, x) : f.add(x, a_elem);
}

}  // namespace detail

// N = 1 + #affine points. Solutions of y^p = c over F_q: one if c = 0,
// gcd(p, q-1) if c is a p-th power, zero otherwise; q + 1 when p does not
// divide q - 1 because x -> x^p is then a bijection.
inline uint64_t count_points(const SuperCurve& curve, const fq::Field& field,
                             ZetaEngine& engine) {
  curve.validate();
  curve.require_good_reduction(field.l);
  const uint64_t q = field.q;
  if ((q - 1) % curve.p != 0) return q + 1;
  const auto& table = engine.table(field, static_cast<uint32_t>(curve.p));
  const uint32_t p = static_cast<uint32_t>(curve.p);
  const uint32_t mr = static_cast<uint32_t>(curve.m % curve.p);
  const uint32_t kr = static_cast<uint32_t>(curve.k % curve.p);
  fq::Field::Elem a_elem = field.from_int(curve.a);
  uint64_t n = 1 + 1;  // infinity and x = 0
  for (uint64_t idx = 1; idx < q; ++idx) {
    fq::Field::Elem x = field.decode(idx);
    fq::Field::Elem t = detail::curve_second_factor(curve, field, x, a_elem);
    if (field.is_zero(t)) {
      n += 1;
      continue;
    }
    uint32_t L = mr * table.log_mod_p[idx] + kr * table.log_mod_p[field.encode(t)];
    if (L % p == 0) n += p;
  }
  return n;
}

inline uint64_t count_points(const SuperCurve& curve, const PrimeFieldCtx& ctx,
                             ZetaEngine& engine) {
  return count_points(curve, ctx.field, engine);
}
inline uint64_t count_points(const SuperCurve& curve, const ExtFieldCtx& ctx,
                             ZetaEngine& engine) {
  return count_points(curve, ctx.field, engine);
}

// Ground-truth double loop for small fields.
inline uint64_t count_points_bruteforce(const SuperCurve& curve, const fq::Field& field) {
  curve.validate();
  curve.require_good_reduction(field.l);
  if (field.q > 5000)
    throw field_too_large_error("brute-force oracle restricted to q <= 5000");
  fq::Field::Elem a_elem = field.from_int(curve.a);
  uint64_t n = 1;
  for (uint64_t xi = 0; xi < field.q; ++xi) {
    fq::Field::Elem x = field.decode(xi);
    fq::Field::Elem rhs = field.mul(field.pow(x, curve.m),
                                    field.pow(detail::curve_second_factor(curve, field, x, a_elem),
                                              curve.k));
    for (uint64_t yi = 0; yi < field.q; ++yi) {
      fq::Field::Elem y = field.decode(yi);
      if (field.pow(y, curve.p) == rhs) ++n;
    }
  }
  return n;
}

namespace detail {

// histogram of (m*log(alpha) + k*log(1-alpha)) mod p over alpha != 0, 1
inline std::vector<uint64_t> jacobi_histogram(uint32_t p, uint32_t m, uint32_t k,
                                              const fq::Field& field,
                                              const fq::ResidueTable& table) {
  std::vector<uint64_t> hist(p, 0);
  fq::Field::Elem one = field.one();
  for (uint64_t idx = 1; idx < field.q; ++idx) {
    fq::Field::Elem alpha = field.decode(idx);
    fq::Field::Elem t = field.sub(one, alpha);
    if (field.is_zero(t)) continue;  // alpha = 1
    uint32_t L = (m % p) * table.log_mod_p[idx] + (k % p) * table.log_mod_p[field.encode(t)];
    ++hist[L % p];
  }
  return hist;
}

inline CycInt hist_to_jacobi(const std::vector<uint64_t>& hist, uint32_t p, uint32_t j) {
  // tau = -sum over alpha of chi^m(alpha) chi^k(1-alpha), chi = chi_1^j
  CycInt tau = CycInt::with_conductor(p);
  for (uint32_t d = 0; d < p; ++d) {
    if (!hist[d]) continue;
    CycInt term = CycInt::zeta(p, (static_cast<uint64_t>(j) * d) % p);
    tau += term * Int(hist[d]);
  }
  return -tau;
}

inline unsigned multiplicative_order(uint64_t l, uint64_t p) {
  uint64_t r = l % p;
  if (r == 0) throw std::invalid_argument("multiplicative_order: p divides l");
  unsigned f = 1;
  uint64_t acc = r;
  while (acc != 1) {
    acc = acc * r % p;
    ++f;
  }
  return f;
}

}  // namespace detail

// Jacobi sum tau_{m,k} = -sum chi^m(alpha) chi^k(1-alpha) for the j-th power
// of the base character of order p on F_q*, q = 1 mod p. For residue fields
// too large to enumerate the value is pinned exactly when ord_p(l) = p-1:
// tau is fixed by the full Galois group (Frobenius generates it), hence a
// rational integer; |tau|^2 = q and tau = -(q-2) mod (1-zeta_p) force
// tau = -l^{(p-1)/2}.
inline CycInt jacobi_sum(uint64_t p, uint64_t m, uint64_t k, const fq::Field& field,
                         uint32_t j, ZetaEngine& engine) {
  if ((field.q - 1) % p != 0)
    throw std::invalid_argument("jacobi_sum: q = 1 mod p required");
  if (j == 0 || j >= p) throw std::invalid_argument("jacobi_sum: 1 <= j <= p-1");
  if (field.q <= engine.table_index_bound) {
    const auto& table = engine.table(field, static_cast<uint32_t>(p));
    auto hist = detail::jacobi_histogram(static_cast<uint32_t>(p),
                                         static_cast<uint32_t>(m % p),
                                         static_cast<uint32_t>(k % p), field, table);
    return detail::hist_to_jacobi(hist, static_cast<uint32_t>(p), j);
  }
  if (field.d == p - 1 && detail::multiplicative_order(field.l, p) == p - 1 &&
      m % p != 0 && k % p != 0 && (m + k) % p != 0) {
    Int val = -pow(Int(field.l), (p - 1) / 2);
    return CycInt(p, val);
  }
  throw field_too_large_error("jacobi_sum: field too large to enumerate");
}

inline CycInt jacobi_sum(uint64_t p, uint64_t m, uint64_t k, const PrimeFieldCtx& ctx,
                         uint32_t j, ZetaEngine& engine) {
  return jacobi_sum(p, m, k, ctx.field, j, engine);
}
inline CycInt jacobi_sum(uint64_t p, uint64_t m, uint64_t k, const ExtFieldCtx& ctx,
                         uint32_t j, ZetaEngine& engine) {
  return jacobi_sum(p, m, k, ctx.field, j, engine);
}

// N = 1 + q + sum over nontrivial chi of chi^{m+k}(a) J(chi^m, chi^k),
// evaluated exactly in Z[zeta_p]; must be a rational integer.
inline uint64_t char_sum_count(const SuperCurve& curve_in, const fq::Field& field,
                               ZetaEngine& engine) {
  SuperCurve curve = curve_in.as_minus();
  curve.require_good_reduction(field.l);
  if ((field.q - 1) % curve.p != 0)
    throw std::invalid_argument("char_sum_count: q = 1 mod p required");
  const uint32_t p = static_cast<uint32_t>(curve.p);
  const auto& table = engine.table(field, p);
  auto hist = detail::jacobi_histogram(p, static_cast<uint32_t>(curve.m % p),
                                       static_cast<uint32_t>(curve.k % p), field, table);
  uint64_t la = table.log_mod_p[field.encode(field.from_int(curve.a))];
  CycInt acc = CycInt::with_conductor(p);
  for (uint32_t j = 1; j < p; ++j) {
    CycInt tau = detail::hist_to_jacobi(hist, p, j);
    CycInt chi_a = CycInt::zeta(p, j * ((curve.m + curve.k) % p) % p * la % p);
    acc += chi_a * (-tau);  // J = -tau
  }
  if (!acc.is_rational())
    throw std::logic_error("char_sum_count: character sum is not a rational integer");
  Int n = Int(field.q) + 1 + acc.rational_part();
  return n.get_ui();
}

inline uint64_t char_sum_count(const SuperCurve& c, const PrimeFieldCtx& ctx, ZetaEngine& e) {
  return char_sum_count(c, ctx.field, e);
}
inline uint64_t char_sum_count(const SuperCurve& c, const ExtFieldCtx& ctx, ZetaEngine& e) {
  return char_sum_count(c, ctx.field, e);
}

// ---- zeta reports -------------------------------------------------------------

struct ZetaReport {
  SuperCurve curve;
  uint64_t l = 0;
  bool good_reduction = true;
  std::string method;
  std::vector<uint64_t> counts;     // N_1 .. N_g
  std::vector<Int> power_sums;      // t_1 .. t_g
  std::vector<Int> sym;             // s_0 .. s_2g
  std::vector<Int> P_coeffs;        // coefficients of P_l(T), degree 2g
  Int jacobian_order;
  std::vector<Rat> slopes;          // 2g Newton-polygon slopes
};

// Lower-convex-hull slopes of (i, val_l(c_i)), each repeated by its
// horizontal length.
inline std::vector<Rat> newton_polygon_slopes(const std::vector<Int>& coeffs, uint64_t l) {
  struct Pt {
    long i;
    long v;
  };
  std::vector<Pt> pts;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Int c = abs(coeffs[i]);
    long v = 0;
    while (c % l == 0) {
      c /= static_cast<unsigned long>(l);
      ++v;
    }
    pts.push_back({static_cast<long>(i), v});
  }
  // monotone chain, keeping only the lower hull
  std::vector<Pt> hull;
  for (const Pt& p : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      // pop b unless it lies strictly below the segment a-p
      long cross = (b.i - a.i) * (p.v - a.v) - (p.i - a.i) * (b.v - a.v);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<Rat> slopes;
  for (size_t s = 0; s + 1 < hull.size(); ++s) {
    Rat slope(hull[s + 1].v - hull[s].v, hull[s + 1].i - hull[s].i);
    slope.canonicalize();
    for (long r = 0; r < hull[s + 1].i - hull[s].i; ++r) slopes.push_back(slope);
  }
  return slopes;
}

namespace detail {

inline void finish_report(ZetaReport& rep) {
  const uint64_t g = rep.curve.genus();
  rep.jacobian_order = 0;
  for (const Int& c : rep.P_coeffs) rep.jacobian_order += c;
  if (rep.jacobian_order <= 0)
    throw std::logic_error("zeta: nonpositive Jacobian order");
  // functional equation s_{2g-i} = l^{g-i} s_i
  for (uint64_t i = 0; i <= g; ++i) {
    if (rep.sym[2 * g - i] != pow(Int(rep.l), g - i) * rep.sym[i])
      throw std::logic_error("zeta: functional equation violated");
  }
  rep.slopes = newton_polygon_slopes(rep.P_coeffs, rep.l);
  if (rep.slopes.size() != 2 * g)
    throw std::logic_error("zeta: slope count mismatch");
}

}  // namespace detail

// Point counts over F_{l^j} for j = 1..g, power sums, Newton's identities,
// then the functional equation fills the upper half of P_l.
inline ZetaReport zeta_numerator_newton(const SuperCurve& curve, uint64_t l,
                                        ZetaEngine& engine) {
  curve.validate();
  curve.require_good_reduction(l);
  const uint64_t g = curve.genus();
  ZetaReport rep;
  rep.curve = curve;
  rep.l = l;
  rep.method = "newton";
  for (uint64_t j = 1; j <= g; ++j) {
    uint64_t q = 1;
    for (uint64_t i = 0; i < j; ++i) {
      if (q > (uint64_t(1) << 62) / l)
        throw field_too_large_error("zeta_numerator_newton: l^j overflows");
      q *= l;
    }
    if ((q - 1) % curve.p != 0) {
      rep.counts.push_back(q + 1);  // x -> x^p is a bijection on F_q
      continue;
    }
    const fq::Field& f = engine.field(l, static_cast<unsigned>(j));
    rep.counts.push_back(count_points(curve, f, engine));
  }
  for (uint64_t j = 1; j <= g; ++j)
    rep.power_sums.push_back(pow(Int(l), j) + 1 - Int(rep.counts[j - 1]));
  rep.sym.assign(2 * g + 1, Int(0));
  rep.sym[0] = 1;
  for (uint64_t k = 1; k <= g; ++k) {
    Int acc = 0;
    for (uint64_t i = 1; i <= k; ++i) {
      Int term = rep.power_sums[i - 1] * rep.sym[k - i];
      acc += (i % 2 == 1) ? term : -term;
    }
    if (acc % static_cast<unsigned long>(k) != 0)
      throw std::logic_error("zeta: Newton identity produced a non-integer");
    rep.sym[k] = acc / static_cast<unsigned long>(k);
  }
  for (uint64_t i = 0; i < g; ++i)
    rep.sym[2 * g - i] = pow(Int(l), g - i) * rep.sym[i];
  rep.P_coeffs.assign(2 * g + 1, Int(0));
  for (uint64_t i = 0; i <= 2 * g; ++i)
    rep.P_coeffs[i] = (i % 2 == 0) ? rep.sym[i] : -rep.sym[i];
  detail::finish_report(rep);
  return rep;
}

// P_l(T) as the product of Galois-orbit factors (1 - chi^{m+k}(a) tau T^f),
// f = ord_p(l), one factor per orbit of chi -> chi^l.
inline ZetaReport zeta_numerator_jacobi(const SuperCurve& curve_in, uint64_t l,
                                        ZetaEngine& engine) {
  curve_in.validate();
  curve_in.require_good_reduction(l);
  SuperCurve curve = curve_in.as_minus();
  const uint64_t p = curve.p;
  const uint64_t g = curve.genus();
  const unsigned f = detail::multiplicative_order(l, p);

  // orbit representatives of <l> acting on (Z/p)^* by multiplication
  std::vector<bool> seen(p, false);
  std::vector<uint32_t> reps;
  for (uint32_t j = 1; j < p; ++j) {
    if (seen[j]) continue;
    reps.push_back(j);
    uint64_t cur = j;
    for (unsigned it = 0; it < f; ++it) {
      seen[cur] = true;
      cur = cur * (l % p) % p;
    }
  }

  std::vector<CycInt> factors_c;
  uint64_t qf = 1;
  bool overflow = false;
  for (unsigned i = 0; i < f; ++i) {
    if (qf > (uint64_t(1) << 62) / l) {
      overflow = true;
      break;
    }
    qf *= l;
  }
  const bool enumerable = !overflow && qf <= engine.table_index_bound;
  if (enumerable) {
    const fq::Field& field = engine.field(l, f);
    const auto& table = engine.table(field, static_cast<uint32_t>(p));
    auto hist = detail::jacobi_histogram(static_cast<uint32_t>(p),
                                         static_cast<uint32_t>(curve.m % p),
                                         static_cast<uint32_t>(curve.k % p), field, table);
    uint64_t la = table.log_mod_p[field.encode(field.from_int(curve.a))];
    for (uint32_t j : reps) {
      CycInt tau = detail::hist_to_jacobi(hist, static_cast<uint32_t>(p), j);
      CycInt chi_a =
          CycInt::zeta(p, j * ((curve.m + curve.k) % p) % p * la % p);
      factors_c.push_back(chi_a * tau);
    }
  } else if (f == p - 1) {
    // single orbit; tau = -l^{(p-1)/2} and chi^{m+k}(a) = 1 because a lies
    // in the prime field whose multiplicative order is coprime to p
    factors_c.push_back(CycInt(p, -pow(Int(l), (p - 1) / 2)));
  } else {
    throw field_too_large_error("zeta_numerator_jacobi: residue field too large");
  }

  std::vector<CycInt> coeffs(2 * g + 1, CycInt::with_conductor(p));
  coeffs[0] = CycInt(p, Int(1));
  size_t deg = 0;
  for (const CycInt& c : factors_c) {
    deg += f;
    for (size_t i = deg; i >= f; --i) {
      CycInt delta = c * coeffs[i - f];
      coeffs[i] -= delta;
      if (i == f) break;
    }
  }
  ZetaReport rep;
  rep.curve = curve_in;
  rep.l = l;
  rep.method = "jacobi";
  rep.P_coeffs.assign(2 * g + 1, Int(0));
  for (size_t i = 0; i <= 2 * g; ++i) {
    if (!coeffs[i].is_rational())
      throw std::logic_error("zeta_numerator_jacobi: coefficient not Galois-stable");
    rep.P_coeffs[i] = coeffs[i].rational_part();
  }
  rep.sym.assign(2 * g + 1, Int(0));
  for (size_t i = 0; i <= 2 * g; ++i)
    rep.sym[i] = (i % 2 == 0) ? rep.P_coeffs[i] : -rep.P_coeffs[i];
  // recover power sums and counts from the symmetric functions
  for (uint64_t kk = 1; kk <= g; ++kk) {
    Int t = 0;
    for (uint64_t i = 1; i < kk; ++i) {
      Int term = rep.sym[i] * rep.power_sums[kk - i - 1];
      t += (i % 2 == 1) ? term : -term;
    }
    Int last = Int(kk) * rep.sym[kk];
    t += (kk % 2 == 1) ? last : -last;
    rep.power_sums.push_back(t);
    Int n = pow(Int(l), kk) + 1 - t;
    rep.counts.push_back(n.get_ui());
  }
  detail::finish_report(rep);
  return rep;
}

inline bool is_pth_power(int64_t a, uint64_t l, uint64_t p) {
  int64_t r = a % static_cast<int64_t>(l);
  if (r < 0) r += static_cast<int64_t>(l);
  if (r == 0) throw std::invalid_argument("is_pth_power: l divides a");
  if ((l - 1) % p != 0) return true;
  return fq::pow_mod_u64(static_cast<uint64_t>(r), (l - 1) / p, l) == 1;
}

enum class ZetaMethod { newton, jacobi };

inline Int jacobian_order(const SuperCurve& curve, uint64_t l, ZetaMethod method,
                          ZetaEngine& engine) {
  ZetaReport rep = method == ZetaMethod::newton ? zeta_numerator_newton(curve, l, engine)
                                                : zeta_numerator_jacobi(curve, l, engine);
  return rep.jacobian_order;
}

// Picks whichever zeta path is computable for this prime: the Jacobi path
// when the residue field is enumerable (or collapses to the closed form),
// the Newton path when all of F_l .. F_{l^g} are enumerable.
inline Int jacobian_order_auto(const SuperCurve& curve, uint64_t l, ZetaEngine& engine) {
  const uint64_t p = curve.p;
  unsigned f = detail::multiplicative_order(l, p);
  auto size_ok = [&](unsigned d) {
    uint64_t q = 1;
    for (unsigned i = 0; i < d; ++i) {
      if (q > engine.table_index_bound / l) return false;
      q *= l;
    }
    return q <= engine.table_index_bound;
  };
  // primitive roots need no enumeration at all on the Newton path
  if (f > curve.genus()) return jacobian_order(curve, l, ZetaMethod::newton, engine);
  if (f == p - 1 || size_ok(f)) return jacobian_order(curve, l, ZetaMethod::jacobi, engine);
  if (size_ok(static_cast<unsigned>(curve.genus())))
    return jacobian_order(curve, l, ZetaMethod::newton, engine);
  throw field_too_large_error("jacobian_order_auto: no feasible zeta path at l = " +
                              std::to_string(l));
}

}  // namespace twistforge
