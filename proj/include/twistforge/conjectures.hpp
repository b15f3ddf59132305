#pragma once

#include <algorithm>
#include <chrono>
#include <thread>
#include <vector>

#include "twistforge/curve_ff.hpp"
#include "twistforge/parse.hpp"
#include "twistforge/torsion.hpp"
#include "twistforge/twists.hpp"

namespace twistforge {

struct ScanCaseRecord {
  Int a;
  uint64_t k = 0;
  uint64_t l = 0;
  Int order;
  bool order_odd = false;
  bool skipped = false;
  std::string note;
};

struct ScanViolation {
  Int a;
  uint64_t k = 0;
  uint64_t l = 0;
  Int order;
};

struct Q5CaseSummary {
  Int a;
  uint64_t k = 0;
  Int order_gcd;
  bool certified_no_two_torsion = false;
  unsigned primes_used = 0;
};

struct ScanReport {
  std::string kind;
  uint64_t p = 0;
  uint64_t l_bound = 0;
  std::vector<Int> a_set;
  std::vector<uint64_t> k_set;
  std::vector<std::string> notes;
  std::vector<ScanCaseRecord> cases;
  std::vector<ScanViolation> violations;
  std::vector<Q5CaseSummary> q5_summaries;
  double timing_ms = 0.0;
};

namespace detail {

inline std::vector<Int> normalize_scan_a_set(uint64_t p, const std::vector<Int>& a_in,
                                             std::vector<std::string>& notes) {
  std::vector<Int> out;
  for (const Int& a : a_in) {
    if (a == 0) throw std::invalid_argument("scan: a must be nonzero");
    Int na = normalize_pth_power_free(a, p);
    if (na != a)
      notes.push_back("a = " + to_string(a) + " normalized p-th-power-free to " +
                      to_string(na));
    if (na % 2 != 0)
      throw std::invalid_argument("scan: a must be even (after normalization)");
    out.push_back(na);
  }
  return out;
}

inline void validate_scan_k_set(uint64_t p, const std::vector<uint64_t>& k_set) {
  for (uint64_t k : k_set) {
    if (k < 2 || k > p - 3 || k == (p - 1) / 2)
      throw std::invalid_argument(
          "scan: k must lie in {2..p-3} excluding (p-1)/2");
  }
}

template <class Fn>
void run_partitioned(size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < n; i += t) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

// For every (a, k) and every prime l <= l_bound with l = 1 mod p, l not
// dividing a, and a not a p-th power mod l, records the parity of
// #J^{a,1,k}(F_l). Even orders land in `violations`.
inline ScanReport scan_parity_conjecture(uint64_t p, const std::vector<Int>& a_in,
                                         const std::vector<uint64_t>& k_set,
                                         uint64_t l_bound, unsigned threads = 1) {
  auto t0 = std::chrono::steady_clock::now();
  if (p <= 5 || !fq::is_prime_u64(p))
    throw std::invalid_argument("scan_parity_conjecture: p > 5 prime required");
  ScanReport rep;
  rep.kind = "parity-conjecture";
  rep.p = p;
  rep.l_bound = l_bound;
  rep.k_set = k_set;
  detail::validate_scan_k_set(p, k_set);
  rep.a_set = detail::normalize_scan_a_set(p, a_in, rep.notes);

  std::vector<uint64_t> primes;
  for (uint64_t l = p + 1; l <= l_bound; ++l)
    if (l % p == 1 && fq::is_prime_u64(l)) primes.push_back(l);

  for (const Int& a : rep.a_set) {
    for (uint64_t k : k_set) {
      for (uint64_t l : primes) {
        ScanCaseRecord rec;
        rec.a = a;
        rec.k = k;
        rec.l = l;
        if (a % static_cast<unsigned long>(l) == 0) {
          rec.skipped = true;
          rec.note = "l divides a";
          rep.cases.push_back(std::move(rec));
          continue;
        }
        if (is_pth_power(a.get_si(), l, p)) {
          rec.skipped = true;
          rec.note = "a is a p-th power mod l";
          rep.cases.push_back(std::move(rec));
          continue;
        }
        rep.cases.push_back(std::move(rec));
      }
    }
  }
  std::vector<ScanCaseRecord*> active;
  for (auto& rec : rep.cases)
    if (!rec.skipped) active.push_back(&rec);
  detail::run_partitioned(active.size(), threads, [&](size_t i) {
    ScanCaseRecord& rec = *active[i];
    ZetaEngine engine;
    SuperCurve curve = SuperCurve::minus(p, 1, rec.k, rec.a.get_si());
    rec.order = jacobian_order(curve, rec.l, ZetaMethod::jacobi, engine);
    rec.order_odd = rec.order % 2 != 0;
  });
  for (const auto& rec : rep.cases)
    if (!rec.skipped && !rec.order_odd)
      rep.violations.push_back({rec.a, rec.k, rec.l, rec.order});
  rep.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// For each (a, k), gcd of Jacobian orders over the feasible good odd primes
// up to l_bound; an odd gcd certifies the absence of rational 2-torsion.
inline ScanReport scan_question5(uint64_t p, const std::vector<Int>& a_in,
                                 const std::vector<uint64_t>& k_set, uint64_t l_bound,
                                 unsigned threads = 1) {
  auto t0 = std::chrono::steady_clock::now();
  if (p <= 5 || !fq::is_prime_u64(p))
    throw std::invalid_argument("scan_question5: p > 5 prime required");
  ScanReport rep;
  rep.kind = "question5";
  rep.p = p;
  rep.l_bound = l_bound;
  rep.k_set = k_set;
  detail::validate_scan_k_set(p, k_set);
  rep.a_set = detail::normalize_scan_a_set(p, a_in, rep.notes);

  std::vector<uint64_t> primes;
  for (uint64_t l = 3; l <= l_bound; l += 2)
    if (fq::is_prime_u64(l)) primes.push_back(l);

  for (const Int& a : rep.a_set) {
    for (uint64_t k : k_set) {
      for (uint64_t l : primes) {
        ScanCaseRecord rec;
        rec.a = a;
        rec.k = k;
        rec.l = l;
        SuperCurve curve = SuperCurve::minus(p, 1, k, a.get_si());
        if (!curve.good_reduction(l)) {
          rec.skipped = true;
          rec.note = "bad reduction";
        }
        rep.cases.push_back(std::move(rec));
      }
    }
  }
  std::vector<ScanCaseRecord*> active;
  for (auto& rec : rep.cases)
    if (!rec.skipped) active.push_back(&rec);
  detail::run_partitioned(active.size(), threads, [&](size_t i) {
    ScanCaseRecord& rec = *active[i];
    ZetaEngine engine;
    SuperCurve curve = SuperCurve::minus(p, 1, rec.k, rec.a.get_si());
    try {
      rec.order = jacobian_order_auto(curve, rec.l, engine);
      rec.order_odd = rec.order % 2 != 0;
    } catch (const field_too_large_error&) {
      rec.skipped = true;
      rec.note = "no feasible zeta path";
    }
  });
  for (const Int& a : rep.a_set) {
    for (uint64_t k : k_set) {
      Q5CaseSummary sum;
      sum.a = a;
      sum.k = k;
      sum.order_gcd = 0;
      for (const auto& rec : rep.cases) {
        if (rec.skipped || rec.a != a || rec.k != k) continue;
        sum.order_gcd = sum.order_gcd == 0 ? rec.order : gcd(sum.order_gcd, rec.order);
        ++sum.primes_used;
      }
      sum.certified_no_two_torsion = sum.order_gcd != 0 && sum.order_gcd % 2 != 0;
      if (!sum.certified_no_two_torsion)
        rep.notes.push_back("a=" + to_string(a) + " k=" + std::to_string(k) +
                            ": 2-torsion not excluded by sampled primes");
      rep.q5_summaries.push_back(std::move(sum));
    }
  }
  rep.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---- bounded-height point searches -------------------------------------------

enum class SearchFamily { quad_m_2m, m_m_m };

struct SearchHit {
  Rat d;
  bool excluded_trivial_twist = false;     // no twist degree in the family is genuine
  std::vector<std::string> degree_flags;   // per-degree admissibility notes
  std::vector<std::pair<Rat, Rat>> points; // one nontrivial point per curve
};

struct PointSearchReport {
  SearchFamily family{};
  long m = 0;
  std::string f_text;
  long a = 0, b = 0, c = 0;
  uint64_t d_height = 0, xy_height = 0;
  uint64_t d_candidates = 0;
  std::vector<SearchHit> hits;
  std::vector<Rat> excluded_d;  // logged trivial-twist candidates
  double timing_ms = 0.0;
};

namespace detail {

inline bool admissible_for_degree(const std::vector<std::pair<Int, long>>& exps,
                                  long deg) {
  for (const auto& [prime, e] : exps) {
    long ae = e < 0 ? -e : e;
    if (std::gcd(ae, deg) == 1) return true;
  }
  return false;
}

inline std::vector<std::pair<Int, long>> rational_exponents(const Rat& d) {
  std::vector<std::pair<Int, long>> out;
  for (const auto& [prime, e] : factorize(Int(d.get_num())))
    out.emplace_back(prime, static_cast<long>(e));
  for (const auto& [prime, e] : factorize(Int(d.get_den())))
    out.emplace_back(prime, -static_cast<long>(e));
  return out;
}

// rationals of height <= h in lowest terms, deterministic order
template <class Fn>
void for_each_rational(uint64_t h, Fn&& fn) {
  for (uint64_t den = 1; den <= h; ++den) {
    for (int64_t num = -static_cast<int64_t>(h); num <= static_cast<int64_t>(h); ++num) {
      if (num == 0) continue;
      if (std::gcd(static_cast<uint64_t>(num < 0 ? -num : num), den) != 1) continue;
      Rat r{Int(num), Int(den)};
      r.canonicalize();
      fn(r);
    }
  }
}

// first nontrivial (x != 0, y != 0) bounded-height point with y^2 = rhs(x)
inline bool search_square_point(const RF& rhs_in_x, uint64_t xy_height,
                                std::pair<Rat, Rat>& out) {
  bool found = false;
  for_each_rational(xy_height, [&](const Rat& xv) {
    if (found) return;
    Rat val;
    try {
      val = evaluate(rhs_in_x, {{VAR_X, xv}});
    } catch (const pole_error&) {
      return;
    }
    if (val == 0) return;
    Rat y;
    if (!rat_sqrt(val, y)) return;
    if (y == 0) return;
    if (abs(y.get_num()) > Int(static_cast<long>(xy_height)) ||
        y.get_den() > Int(static_cast<long>(xy_height)))
      return;
    out = {xv, y};
    found = true;
  });
  return found;
}

}  // namespace detail

// Searches bounded-height d and bounded-height rational points on each curve
// of the family; records every d for which all curves simultaneously acquire
// a nontrivial point. Evidence only.
inline PointSearchReport point_search_twists(SearchFamily family, const PolyQ& f, long m,
                                             long a, long b, long c, uint64_t d_height,
                                             uint64_t xy_height) {
  auto t0 = std::chrono::steady_clock::now();
  detail::require(m >= 3 && m % 2 == 1, "point_search: m must be odd >= 3");
  PointSearchReport rep;
  rep.family = family;
  rep.m = m;
  rep.a = a;
  rep.b = b;
  rep.c = c;
  rep.d_height = d_height;
  rep.xy_height = xy_height;
  std::vector<long> degrees;
  if (family == SearchFamily::quad_m_2m) {
    detail::require(!f.is_zero() && !f.is_constant(), "point_search: f required");
    rep.f_text = f.str();
    degrees = {2, m, 2 * m};
  } else {
    detail::require(a != 0 && b != 0 && c != 0, "point_search: a, b, c must be nonzero");
    degrees = {m, m, m};
  }
  if (d_height == 0 || xy_height == 0) return rep;

  detail::for_each_rational(d_height, [&](const Rat& d) {
    ++rep.d_candidates;
    auto exps = detail::rational_exponents(d);
    SearchHit hit;
    hit.d = d;
    bool any_degree_genuine = false;
    for (long deg : degrees) {
      bool ok = detail::admissible_for_degree(exps, deg);
      any_degree_genuine = any_degree_genuine || ok;
      hit.degree_flags.push_back(std::to_string(deg) + "-twist:" +
                                 (ok ? "genuine" : "trivial"));
    }
    hit.excluded_trivial_twist = !any_degree_genuine;
    if (hit.excluded_trivial_twist) rep.excluded_d.push_back(d);

    std::vector<RF> curves;
    if (family == SearchFamily::quad_m_2m) {
      RF dD(d);
      curves.push_back(RF(f) / dD);  // d y^2 = f  ->  y^2 = f/d
      curves.push_back(RF(detail::mono(VAR_X, static_cast<uint32_t>(m))) +
                       dD.pow(m - 1));
      curves.push_back(RF(detail::mono(VAR_X, static_cast<uint32_t>(m))) + dD);
    } else {
      for (long s : {a, b, c})
        curves.push_back(RF(detail::mono(VAR_X, static_cast<uint32_t>(m), d)) +
                         RF(Rat(s)));
    }
    bool all_found = true;
    for (const RF& rhs : curves) {
      std::pair<Rat, Rat> pt;
      if (!detail::search_square_point(rhs, xy_height, pt)) {
        all_found = false;
        break;
      }
      hit.points.push_back(pt);
    }
    if (all_found) rep.hits.push_back(std::move(hit));
  });
  rep.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace twistforge
