#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "twistforge/conjectures.hpp"
#include "twistforge/curve_ff.hpp"
#include "twistforge/parse.hpp"
#include "twistforge/torsion.hpp"
#include "twistforge/twists.hpp"

namespace twistforge::cli {

using json = nlohmann::ordered_json;

namespace detail {

inline Rat parse_rat(const std::string& s) {
  RF f = parse_ratfunc(s);
  if (!f.is_constant()) throw parse_error("expected a rational number: " + s);
  return evaluate(f, {});
}

inline std::map<int, Rat> parse_point(const std::string& s) {
  std::map<int, Rat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw parse_error("--at expects var=value pairs separated by commas");
    std::string var = item.substr(0, eq);
    var.erase(remove_if(var.begin(), var.end(), ::isspace), var.end());
    if (var.size() != 1 || var_index(var[0]) < 0)
      throw parse_error("--at: unknown variable '" + var + "'");
    out[var_index(var[0])] = parse_rat(item.substr(eq + 1));
  }
  return out;
}

inline json verify_to_json(const VerifyReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"point", c.point_index + 1},
                      {"curve", c.curve},
                      {"on_curve", c.on_curve},
                      {"residual", c.residual}});
  return {{"checks", checks}, {"all_verified", rep.all_verified}};
}

inline json nondegenerate_to_json(const NondegeneracyReport& rep) {
  json factors = json::array(), nc = json::array();
  for (const auto& f : rep.factors)
    factors.push_back({{"factor", f.name}, {"nonzero", f.nonzero}});
  for (const auto& c : rep.nonconstant_checks)
    nc.push_back({{"item", c.name}, {"nonconstant", c.nonconstant}});
  return {{"factors", factors}, {"nonconstant", nc}, {"all_ok", rep.all_ok}};
}

inline json zeta_to_json(const ZetaReport& rep) {
  json j;
  j["curve"] = rep.curve.str();
  j["l"] = rep.l;
  j["method"] = rep.method;
  j["counts"] = rep.counts;
  json t = json::array(), s = json::array(), pc = json::array(), sl = json::array();
  for (const auto& v : rep.power_sums) t.push_back(to_string(v));
  for (const auto& v : rep.sym) s.push_back(to_string(v));
  for (const auto& v : rep.P_coeffs) pc.push_back(to_string(v));
  for (const auto& v : rep.slopes) sl.push_back(to_string(v));
  j["power_sums"] = t;
  j["symmetric"] = s;
  j["P_coeffs"] = pc;
  j["jacobian_order"] = to_string(rep.jacobian_order);
  j["slopes"] = sl;
  return j;
}

inline json scan_to_json(const ScanReport& rep, bool include_cases = true) {
  json j;
  j["kind"] = rep.kind;
  j["p"] = rep.p;
  j["l_bound"] = rep.l_bound;
  json as = json::array();
  for (const auto& a : rep.a_set) as.push_back(to_string(a));
  j["a_set"] = as;
  j["k_set"] = rep.k_set;
  j["notes"] = rep.notes;
  if (include_cases) {
    json cases = json::array();
    for (const auto& c : rep.cases) {
      json cj = {{"a", to_string(c.a)}, {"k", c.k}, {"l", c.l}};
      if (c.skipped) {
        cj["skipped"] = c.note;
      } else {
        cj["order"] = to_string(c.order);
        cj["odd"] = c.order_odd;
      }
      cases.push_back(std::move(cj));
    }
    j["cases"] = cases;
  }
  json viols = json::array();
  for (const auto& v : rep.violations)
    viols.push_back({{"a", to_string(v.a)}, {"k", v.k}, {"l", v.l}, {"order", to_string(v.order)}});
  j["violations"] = viols;
  if (!rep.q5_summaries.empty()) {
    json sums = json::array();
    for (const auto& s : rep.q5_summaries)
      sums.push_back({{"a", to_string(s.a)},
                      {"k", s.k},
                      {"order_gcd", to_string(s.order_gcd)},
                      {"primes_used", s.primes_used},
                      {"status", s.certified_no_two_torsion
                                     ? "no rational 2-torsion (certified)"
                                     : "2-torsion not excluded"}});
    j["case_summaries"] = sums;
  }
  j["timing_ms"] = rep.timing_ms;
  return j;
}

inline void emit(const json& j, const std::string& format, const std::string& out_path,
                 std::ostream& out) {
  std::string payload;
  if (format == "table") {
    std::ostringstream os;
    std::function<void(const json&, int)> walk = [&](const json& v, int indent) {
      std::string pad(static_cast<size_t>(indent) * 2, ' ');
      if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
          if (it.value().is_object() || it.value().is_array()) {
            os << pad << it.key() << ":\n";
            walk(it.value(), indent + 1);
          } else {
            os << pad << it.key() << ": " << it.value().dump() << "\n";
          }
        }
      } else if (v.is_array()) {
        for (const auto& e : v) {
          if (e.is_object() || e.is_array()) {
            os << pad << "-\n";
            walk(e, indent + 1);
          } else {
            os << pad << "- " << e.dump() << "\n";
          }
        }
      } else {
        os << pad << v.dump() << "\n";
      }
    };
    walk(j, 0);
    payload = os.str();
  } else {
    payload = j.dump(2) + "\n";
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    f << payload;
  } else {
    out << payload;
  }
}

struct BuilderArgs {
  std::string kind;
  std::string f_text = "x^3+1";
  long m = 3;
  long n = 1;
  long p = 5;
  long a = 1, b = 1, c = 1;
};

inline TwistConstruction build_from_args(const BuilderArgs& ba) {
  HyperParams hp;
  hp.m = ba.m;
  hp.a = ba.a;
  hp.b = ba.b;
  hp.c = ba.c;
  if (ba.kind == "q2-m-m" || ba.kind == "q2-2m-2m") {
    hp.f = parse_poly(ba.f_text);
    return ba.kind == "q2-m-m" ? build_q2_m_m(hp) : build_q2_2m_2m(hp);
  }
  if (ba.kind == "m-m-2m") return build_m_m_2m(hp);
  if (ba.kind == "p-twist-product") return build_p_twist_product(ba.p, ba.m, ba.a, ba.b);
  if (ba.kind == "p-twist-additive")
    return build_p_twist_additive(ba.p, ba.m, ba.n, ba.a, ba.b);
  if (ba.kind == "example-2-m-2m") return build_example_2_m_2m(parse_poly(ba.f_text), ba.m);
  throw std::invalid_argument("unknown construction kind: " + ba.kind);
}

inline void add_builder_options(CLI::App* cmd, BuilderArgs& ba) {
  cmd->add_option("--kind", ba.kind,
                  "q2-m-m | q2-2m-2m | m-m-2m | p-twist-product | p-twist-additive | "
                  "example-2-m-2m")
      ->required();
  cmd->add_option("--f", ba.f_text, "polynomial f(x)");
  cmd->add_option("--m", ba.m, "twist exponent m");
  cmd->add_option("--n", ba.n, "second exponent of the additive p-twist family");
  cmd->add_option("--p", ba.p, "superelliptic exponent p");
  cmd->add_option("--a", ba.a);
  cmd->add_option("--b", ba.b);
  cmd->add_option("--c", ba.c);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"twistforge: exact twist constructions and superelliptic curve arithmetic"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;
  unsigned threads = 1;
  if (const char* env = std::getenv("TWISTFORGE_THREADS")) {
    long t = std::strtol(env, nullptr, 10);
    if (t >= 1 && t <= 256) threads = static_cast<unsigned>(t);
  }
  unsigned long seed = 0;
  app.add_option("--format", format, "json | table")->capture_default_str();
  app.add_option("--out", out_path, "write the report to a file");
  app.add_option("--threads", threads, "parallelism degree for scans");
  app.add_option("--seed", seed, "recorded in reports; affects prime processing order only");

  detail::BuilderArgs ba;
  std::string curve_text, at_text, method = "both", check_kind = "gr";
  uint64_t arg_l = 7, ext_degree = 1;
  long arg_p = 5, arg_m = 1, arg_k = 1, arg_a = 1, arg_n_add = 1;
  uint32_t arg_j = 1;
  unsigned budget = 10;
  uint64_t ceiling = 500, l_bound = 100;
  std::vector<long> a_list;
  std::vector<uint64_t> k_list;
  std::string family_text = "quad-m-2m";
  uint64_t d_height = 8, xy_height = 8;
  std::string form_text = "minus";

  auto* c_verify = app.add_subcommand("verify", "build a construction and verify memberships");
  detail::add_builder_options(c_verify, ba);
  auto* c_nondeg = app.add_subcommand("nondegenerate", "nondegeneracy factors of a construction");
  detail::add_builder_options(c_nondeg, ba);
  auto* c_auto = app.add_subcommand("automorphism", "coordinate-level automorphism identities");
  detail::add_builder_options(c_auto, ba);
  auto* c_spec = app.add_subcommand("specialize", "evaluate a construction at a rational point");
  detail::add_builder_options(c_spec, ba);
  c_spec->add_option("--at", at_text, "e.g. \"u=1,v=1,w=1\"")->required();

  auto add_curve_opts = [&](CLI::App* cmd) {
    cmd->add_option("--p", arg_p)->required();
    cmd->add_option("--m", arg_m);
    cmd->add_option("--k", arg_k);
    cmd->add_option("--a", arg_a);
    cmd->add_option("--form", form_text, "plus | minus");
  };
  auto make_curve = [&]() {
    std::ostringstream os;
    os << "p=" << arg_p << " m=" << arg_m << " k=" << arg_k << " a=" << arg_a
       << " form=" << form_text;
    return parse_curve(os.str());
  };

  auto* c_count = app.add_subcommand("count-points", "points of a superelliptic curve over F_{l^d}");
  add_curve_opts(c_count);
  c_count->add_option("--l", arg_l)->required();
  c_count->add_option("--ext", ext_degree, "extension degree");
  auto* c_jac = app.add_subcommand("jacobi-sum", "tau_{m,k} for the j-th character");
  c_jac->add_option("--p", arg_p)->required();
  c_jac->add_option("--m", arg_m);
  c_jac->add_option("--k", arg_k);
  c_jac->add_option("--l", arg_l)->required();
  c_jac->add_option("--ext", ext_degree);
  c_jac->add_option("--j", arg_j);
  auto* c_zeta = app.add_subcommand("zeta", "zeta numerator, Jacobian order, slopes");
  add_curve_opts(c_zeta);
  c_zeta->add_option("--l", arg_l)->required();
  c_zeta->add_option("--method", method, "newton | jacobi | both");
  auto* c_order = app.add_subcommand("jacobian-order", "Jacobian order over F_l");
  add_curve_opts(c_order);
  c_order->add_option("--l", arg_l)->required();
  c_order->add_option("--method", method, "newton | jacobi | both");
  auto* c_tors = app.add_subcommand("torsion-bound", "sampled-prime torsion certificate");
  add_curve_opts(c_tors);
  c_tors->add_option("--budget", budget);
  c_tors->add_option("--ceiling", ceiling);
  auto* c_two = app.add_subcommand("two-torsion", "2-torsion predicates");
  c_two->add_option("--check", check_kind, "gr | special | odd-a")->required();
  c_two->add_option("--p", arg_p)->required();
  c_two->add_option("--m", arg_m);
  c_two->add_option("--k", arg_k);
  c_two->add_option("--a", arg_a);
  auto* c_l7 = app.add_subcommand("l7-verify", "hyperelliptic equivalences of the k=1,(p-1)/2,p-2 curves");
  c_l7->add_option("--p", arg_p)->required();
  c_l7->add_option("--a", ba.f_text, "rational a")->required();
  auto* c_parity = app.add_subcommand("scan-parity", "parity conjecture scan");
  c_parity->add_option("--p", arg_p)->required();
  c_parity->add_option("--a", a_list)->required();
  c_parity->add_option("--k", k_list)->required();
  c_parity->add_option("--l-bound", l_bound);
  auto* c_q5 = app.add_subcommand("scan-q5", "2-torsion status scan");
  c_q5->add_option("--p", arg_p)->required();
  c_q5->add_option("--a", a_list)->required();
  c_q5->add_option("--k", k_list)->required();
  c_q5->add_option("--l-bound", l_bound);
  auto* c_search = app.add_subcommand("point-search", "bounded-height simultaneous point search");
  c_search->add_option("--family", family_text, "quad-m-2m | m-m-m");
  c_search->add_option("--f", ba.f_text);
  c_search->add_option("--m", ba.m);
  c_search->add_option("--a", ba.a);
  c_search->add_option("--b", ba.b);
  c_search->add_option("--c", ba.c);
  c_search->add_option("--d-height", d_height);
  c_search->add_option("--xy-height", xy_height);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  json j;
  j["schema"] = 1;
  j["seed"] = seed;
  int exit_code = 0;
  try {
    if (app.got_subcommand(c_verify)) {
      j["command"] = "verify";
      j["kind"] = ba.kind;
      TwistConstruction tc = detail::build_from_args(ba);
      VerifyReport rep = verify_on_curve(tc);
      j["D"] = tc.D.str();
      j.update(detail::verify_to_json(rep));
      exit_code = rep.all_verified ? 0 : 1;
    } else if (app.got_subcommand(c_nondeg)) {
      j["command"] = "nondegenerate";
      j["kind"] = ba.kind;
      TwistConstruction tc = detail::build_from_args(ba);
      NondegeneracyReport rep = verify_nondegenerate(tc);
      j.update(detail::nondegenerate_to_json(rep));
      exit_code = rep.all_ok ? 0 : 1;
    } else if (app.got_subcommand(c_auto)) {
      j["command"] = "automorphism";
      j["kind"] = ba.kind;
      HyperParams hp{parse_poly(ba.f_text), ba.m, ba.a, ba.b, ba.c};
      TwistKind kind;
      if (ba.kind == "q2-m-m")
        kind = TwistKind::q2_m_m;
      else if (ba.kind == "q2-2m-2m")
        kind = TwistKind::q2_2m_2m;
      else if (ba.kind == "m-m-2m")
        kind = TwistKind::m_m_2m;
      else
        throw std::invalid_argument("automorphism: kind must be q2-m-m, q2-2m-2m or m-m-2m");
      AutomorphismReport rep = verify_automorphism(kind, hp);
      json checks = json::array();
      for (const auto& c : rep.checks)
        checks.push_back({{"identity", c.name}, {"holds", c.holds}});
      j["checks"] = checks;
      j["all_hold"] = rep.all_hold;
      exit_code = rep.all_hold ? 0 : 1;
    } else if (app.got_subcommand(c_spec)) {
      j["command"] = "specialize";
      j["kind"] = ba.kind;
      TwistConstruction tc = detail::build_from_args(ba);
      SpecializedInstance inst = specialize_construction(tc, detail::parse_point(at_text));
      j["D"] = to_string(inst.D_value);
      j["T"] = to_string(inst.T_value);
      json pts = json::array();
      for (const auto& [x, y] : inst.points)
        pts.push_back({{"x", to_string(x)}, {"y", to_string(y)}});
      j["points"] = pts;
      json curves = json::array();
      for (const auto& c : inst.curves)
        curves.push_back({{"label", c.label},
                          {"y_coeff", to_string(c.y_coeff)},
                          {"y_exp", c.y_exp},
                          {"rhs", c.rhs_in_x.str()}});
      j["curves"] = curves;
      j["memberships_exact"] = inst.memberships_exact;
      exit_code = inst.memberships_exact ? 0 : 1;
    } else if (app.got_subcommand(c_count)) {
      j["command"] = "count-points";
      SuperCurve curve = make_curve();
      ZetaEngine engine;
      const fq::Field& field = engine.field(arg_l, static_cast<unsigned>(ext_degree));
      uint64_t n = count_points(curve, field, engine);
      j["curve"] = curve.str();
      j["l"] = arg_l;
      j["degree"] = ext_degree;
      j["q"] = field.q;
      j["count"] = n;
    } else if (app.got_subcommand(c_jac)) {
      j["command"] = "jacobi-sum";
      ZetaEngine engine;
      const fq::Field& field = engine.field(arg_l, static_cast<unsigned>(ext_degree));
      CycInt tau = jacobi_sum(static_cast<uint64_t>(arg_p), static_cast<uint64_t>(arg_m),
                              static_cast<uint64_t>(arg_k), field, arg_j, engine);
      Int nrm = (tau * tau.conjugate()).rational_part();
      j["p"] = arg_p;
      j["m"] = arg_m;
      j["k"] = arg_k;
      j["l"] = arg_l;
      j["degree"] = ext_degree;
      j["j"] = arg_j;
      j["tau"] = tau.str();
      j["tau_times_conjugate"] = to_string(nrm);
      j["q"] = field.q;
      j["modulus_check"] = (nrm == Int(static_cast<unsigned long>(field.q)));
    } else if (app.got_subcommand(c_zeta)) {
      j["command"] = "zeta";
      SuperCurve curve = make_curve();
      ZetaEngine engine;
      if (method == "newton" || method == "both")
        j["newton"] = detail::zeta_to_json(zeta_numerator_newton(curve, arg_l, engine));
      if (method == "jacobi" || method == "both")
        j["jacobi"] = detail::zeta_to_json(zeta_numerator_jacobi(curve, arg_l, engine));
      if (method == "both") {
        bool agree = j["newton"]["P_coeffs"] == j["jacobi"]["P_coeffs"];
        j["agree"] = agree;
        exit_code = agree ? 0 : 1;
      }
    } else if (app.got_subcommand(c_order)) {
      j["command"] = "jacobian-order";
      SuperCurve curve = make_curve();
      ZetaEngine engine;
      j["curve"] = curve.str();
      j["l"] = arg_l;
      if (method == "newton" || method == "both")
        j["newton"] = to_string(jacobian_order(curve, arg_l, ZetaMethod::newton, engine));
      if (method == "jacobi" || method == "both")
        j["jacobi"] = to_string(jacobian_order(curve, arg_l, ZetaMethod::jacobi, engine));
      if (method == "both") {
        bool agree = j["newton"] == j["jacobi"];
        j["agree"] = agree;
        exit_code = agree ? 0 : 1;
      }
    } else if (app.got_subcommand(c_tors)) {
      j["command"] = "torsion-bound";
      SuperCurve curve = make_curve();
      ZetaEngine engine;
      TorsionCertificate cert = torsion_bound(curve, budget, ceiling, engine);
      j["curve"] = curve.str();
      json samples = json::array();
      for (const auto& s : cert.samples)
        samples.push_back({{"l", s.l}, {"flavor", s.flavor}, {"order", to_string(s.order)}});
      j["samples"] = samples;
      j["order_gcd"] = to_string(cert.order_gcd);
      j["lower_bound"] = cert.lower_bound_witness;
      j["gcd_divisible_by_p"] = cert.gcd_divisible_by_p;
      j["gcd_divides_2p"] = cert.gcd_divides_2p;
      j["anomalies"] = cert.anomalies;
      exit_code = cert.anomalies.empty() ? 0 : 1;
    } else if (app.got_subcommand(c_two)) {
      j["command"] = "two-torsion";
      j["check"] = check_kind;
      if (check_kind == "gr") {
        bool r = gr_two_torsion_condition(static_cast<uint64_t>(arg_p),
                                          static_cast<uint64_t>(arg_m),
                                          static_cast<uint64_t>(arg_k));
        j["has_two_torsion"] = r;
      } else if (check_kind == "special") {
        bool r = two_torsion_special(static_cast<uint64_t>(arg_p),
                                     static_cast<uint64_t>(arg_k), Int(arg_a));
        j["has_two_torsion"] = r;
      } else if (check_kind == "odd-a") {
        ZetaEngine engine;
        TwoTorsionVerdict v = no_two_torsion_odd_a(static_cast<uint64_t>(arg_p), arg_a,
                                                   static_cast<uint64_t>(arg_m),
                                                   static_cast<uint64_t>(arg_k), engine);
        j["verdict_no_two_torsion"] = v.verdict_no_two_torsion;
        json sl = json::array();
        for (const auto& s : v.slopes) sl.push_back(to_string(s));
        j["slopes_at_2"] = sl;
        j["anomalies"] = v.anomalies;
        exit_code = v.anomalies.empty() ? 0 : 1;
      } else {
        throw std::invalid_argument("two-torsion: --check must be gr, special or odd-a");
      }
    } else if (app.got_subcommand(c_l7)) {
      j["command"] = "l7-verify";
      Rat a = detail::parse_rat(ba.f_text);
      L7Report rep = verify_l7_equivalences(static_cast<uint64_t>(arg_p), a);
      j["p"] = arg_p;
      j["a"] = to_string(a);
      j["F_maps_into_target"] = rep.f_maps_into_target;
      j["G_of_F_is_identity"] = rep.gf_is_identity;
      j["model_1"] = rep.sub1_hyperelliptic;
      j["model_2"] = rep.sub2_hyperelliptic;
      j["all_verified"] = rep.all();
      exit_code = rep.all() ? 0 : 1;
    } else if (app.got_subcommand(c_parity) || app.got_subcommand(c_q5)) {
      bool parity = app.got_subcommand(c_parity);
      j["command"] = parity ? "scan-parity" : "scan-q5";
      std::vector<Int> as(a_list.begin(), a_list.end());
      ScanReport rep = parity ? scan_parity_conjecture(static_cast<uint64_t>(arg_p), as,
                                                       k_list, l_bound, threads)
                              : scan_question5(static_cast<uint64_t>(arg_p), as, k_list,
                                               l_bound, threads);
      j.update(detail::scan_to_json(rep));
      exit_code = parity ? (rep.violations.empty() ? 0 : 1) : 0;
    } else if (app.got_subcommand(c_search)) {
      j["command"] = "point-search";
      SearchFamily family;
      if (family_text == "quad-m-2m")
        family = SearchFamily::quad_m_2m;
      else if (family_text == "m-m-m")
        family = SearchFamily::m_m_m;
      else
        throw std::invalid_argument("point-search: --family must be quad-m-2m or m-m-m");
      PolyQ f;
      if (family == SearchFamily::quad_m_2m) f = parse_poly(ba.f_text);
      PointSearchReport rep =
          point_search_twists(family, f, ba.m, ba.a, ba.b, ba.c, d_height, xy_height);
      j["family"] = family_text;
      j["m"] = ba.m;
      if (family == SearchFamily::quad_m_2m) j["f"] = rep.f_text;
      j["d_height"] = rep.d_height;
      j["xy_height"] = rep.xy_height;
      j["d_candidates"] = rep.d_candidates;
      json hits = json::array();
      for (const auto& h : rep.hits) {
        json pts = json::array();
        for (const auto& [x, y] : h.points)
          pts.push_back({{"x", to_string(x)}, {"y", to_string(y)}});
        hits.push_back({{"d", to_string(h.d)},
                        {"excluded_trivial_twist", h.excluded_trivial_twist},
                        {"degrees", h.degree_flags},
                        {"points", pts}});
      }
      j["hits"] = hits;
      json excl = json::array();
      for (const auto& d : rep.excluded_d) excl.push_back(to_string(d));
      j["excluded_d"] = excl;
      j["timing_ms"] = rep.timing_ms;
    }
  } catch (const parse_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  detail::emit(j, format, out_path, out);
  return exit_code;
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace twistforge::cli
