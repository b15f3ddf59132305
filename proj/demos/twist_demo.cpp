// Builds the quadratic + m + m twist family for f = x^3 + 1, checks every
// point against its curve, and evaluates the family at a rational point.
#include <iostream>

#include "twistforge/parse.hpp"
#include "twistforge/twists.hpp"

int main() {
  using namespace twistforge;

  HyperParams hp;
  hp.f = parse_poly("x^3 + 1");
  hp.m = 3;
  hp.b = 1;
  hp.c = 2;
  TwistConstruction tc = build_q2_m_m(hp);

  std::cout << "D = " << tc.D.str() << "\n\n";
  VerifyReport rep = verify_on_curve(tc);
  for (const auto& c : rep.checks)
    std::cout << "P" << c.point_index + 1 << " on " << c.curve << " : "
              << (c.on_curve ? "yes" : "NO, residual " + c.residual) << "\n";

  HyperParams hp2;
  hp2.f = parse_poly("x^3 + 2");
  hp2.m = 3;
  hp2.b = 1;
  hp2.c = 1;
  SpecializedInstance inst = specialize_construction(
      build_q2_m_m(hp2), {{VAR_U, Rat(1)}, {VAR_V, Rat(1)}, {VAR_W, Rat(1)}});
  std::cout << "\nf = x^3 + 2, b = c = 1 at (u,v,w) = (1,1,1): D = "
            << to_string(inst.D_value)
            << ", memberships exact: " << (inst.memberships_exact ? "yes" : "no")
            << "\n";
  return rep.all_verified && inst.memberships_exact ? 0 : 1;
}
