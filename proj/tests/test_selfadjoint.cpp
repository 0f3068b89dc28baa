#include <doctest.h>

#include "adjforge/error.hpp"
#include "adjforge/selfadjoint.hpp"
#include "support.hpp"

using namespace adjforge;

namespace {

const char *kHeat = R"(
vars x t;
unknown u adjoint v;
eq heat: u_t - u^2*u_xx = 0 solve u[t];
sub inv_sq: v = u^(-2);
sub same: v = u;
)";

const char *kNonlinear = R"(
vars x t;
unknown u adjoint v;
param eps 2;
param c1 c2 c3 c4;
eq nlwave: u_tt - u_xx + eps*u*u_t = 0 solve u[t,t];
)";

const char *kLinear = R"(
vars x t;
unknown u adjoint v;
param eps 2;
eq linwave: u_tt - u_xx + eps*u_t = 0 solve u[t,t];
)";

std::string wave_with_constants() {
  return std::string(testing::kWave) + "param c1 c2 c3 c4 c5 c6 c7 c8;\n";
}

Substitution sub_of(const Session &s, const char *text) {
  Substitution sub;
  sub.name = text;
  Expr v = s.expr(text);
  sub.phi = {v.eps_part(0)};
  sub.psi = {v.eps_part(1)};
  return sub;
}

} // namespace

TEST_CASE("formal lagrangian pairs each equation with its adjoint") {
  Session s = testing::session(testing::kWave);
  CHECK(formal_lagrangian(s.system("wave")) == s.expr("v*(u[t,t] - Dx(F(u)*u[x]) + eps*u[t])"));
  Session triv = Session::parse("vars x t; unknown u adjoint v; eq e: u_t = 0 solve u[t];");
  CHECK(formal_lagrangian(triv.system("e")) == triv.expr("v*u_t"));
}

TEST_CASE("adjoint equations") {
  Session s = testing::session(testing::kWave);
  CHECK(adjoint_system(s.system("wave"))[0] == s.expr("v_tt - F(u)*v_xx - eps*v_t"));
  Session nl = Session::parse(kNonlinear);
  CHECK(adjoint_system(nl.system("nlwave"))[0] == nl.expr("v_tt - v_xx - eps*u*v_t"));
  Session lin = Session::parse(kLinear);
  CHECK(adjoint_system(lin.system("linwave"))[0] == lin.expr("v_tt - v_xx - eps*v_t"));

  Session heat = Session::parse(kHeat);
  AdjointOptions o;
  o.unperturbed = true;
  o.normalize_sign = true;
  CHECK(adjoint_system(heat.system("heat"), o)[0] ==
        heat.expr("v_t + 4*u*v*u_xx + u^2*v_xx + 4*u*u_x*v_x + 2*v*u_x^2"));
}

TEST_CASE("variation with respect to the adjoint returns the system") {
  for (const char *text : {testing::kWave, kNonlinear, kLinear, kHeat}) {
    Session s = Session::parse(text);
    PdeSystem sys = s.system(s.equation_names().front());
    CHECK(variational_derivative(formal_lagrangian(sys), Family::V, 0) == sys.full(0));
  }
}

TEST_CASE("exact nonlinear self-adjointness of the heat equation") {
  Session heat = Session::parse(kHeat);
  PdeSystem sys = heat.system("heat");
  CheckReport quasi = check_nsa_exact(sys, heat.substitution("inv_sq"));
  CHECK(quasi.passed);
  CHECK(quasi.has_multipliers);
  CheckReport strict = check_nsa_exact(sys, heat.substitution("same"));
  CHECK_FALSE(strict.passed);
  CHECK_FALSE(strict.determining.empty());
  CHECK_THROWS_AS(check_nsa_exact(sys, sub_of(heat, "0*u")), ArgumentError);
}

TEST_CASE("approximate self-adjointness under an eps-lifted adjoint solution") {
  Session s = Session::parse(kNonlinear);
  PdeSystem sys = s.system("nlwave");
  CheckReport r = check_nsa_approx(sys, sub_of(s, "eps*(c1*x*t + c2*t + c3*x + c4)"));
  CHECK(r.passed);
  CHECK(r.residual == -Expr::eps(2, 3) * s.expr("u*(c1*x + c2)").with_order(3));

  CheckReport lifted = check_eps_lift(sys, {s.expr("c1*x*t + c2*t + c3*x + c4")});
  CHECK(lifted.passed);
  CheckReport zero = check_eps_lift(sys, {Expr(2)});
  CHECK_FALSE(zero.passed);
  CHECK_FALSE(zero.note.empty());
  CheckReport bad = check_eps_lift(sys, {s.expr("x^2")});
  CHECK_FALSE(bad.passed);

  Session w = testing::session(testing::kWave);
  CHECK(check_eps_lift(w.system("wave"), {w.expr("x*t")}).passed);
}

TEST_CASE("approximate self-adjointness of the perturbed wave equation") {
  Session s = Session::parse(wave_with_constants());
  PdeSystem sys = s.system("wave");
  Expr v = s.expr("(c1*t + c2)*x + c3*t + c4 + eps*((c1*t^2/2 + c5*t + c6)*x + c3*t^2/2 + c7*t + c8)");
  Substitution sub = Substitution::from_full("eq20", {v});
  CheckReport r = check_nsa_approx(sys, sub);
  CHECK(r.passed);
  REQUIRE(r.has_multipliers);
  CHECK(r.lambda[0][0].is_zero());
  CHECK(r.mu[0][0].is_zero());

  CheckReport fail = check_nsa_approx(sys, sub_of(s, "u"));
  CHECK_FALSE(fail.passed);
  CHECK_FALSE(fail.determining.empty());
}

TEST_CASE("reported multipliers satisfy the defining identity") {
  Session heat = Session::parse(kHeat);
  PdeSystem sys = heat.system("heat");
  CheckReport r = check_nsa_exact(sys, heat.substitution("inv_sq"));
  REQUIRE(r.has_multipliers);
  Expr adj = apply_substitution(adjoint_system(sys, {true, false})[0], heat.substitution("inv_sq"));
  CHECK(adj == r.lambda[0][0] * sys.full(0));
  CHECK(r.lambda[0][0] == heat.expr("2*u^(-3)"));
}

TEST_CASE("determining split") {
  Session s = testing::session(testing::kWave);
  PdeSystem sys = s.system("wave");
  CHECK(determining_split(Expr(2), sys).empty());
  auto parts = determining_split(s.expr("x*u_t + t*u_x"), sys);
  REQUIRE(parts.size() == 2);
  CHECK(((parts[0] == s.expr("x") && parts[1] == s.expr("t")) || (parts[0] == s.expr("t") && parts[1] == s.expr("x"))));
  auto eps_parts = determining_split(s.expr("u*u_x + eps*u_x + 3"), sys);
  CHECK(eps_parts.size() == 3);
}

TEST_CASE("substitution search on the perturbed wave equation") {
  Session s = Session::parse(wave_with_constants());
  PdeSystem sys = s.system("wave");
  std::vector<Expr> basis;
  for (const char *b : {"1", "x", "t", "x*t", "t^2", "x*t^2"})
    basis.push_back(s.expr(b));
  std::vector<Symbol> unknowns;
  Substitution ansatz = ansatz_from_basis(sys, basis, unknowns);
  CHECK(unknowns.size() == 12);
  auto families = solve_substitution_ansatz(sys, ansatz, unknowns);
  REQUIRE(families.size() == 1);
  const SolutionFamily &f = families[0];
  CHECK(f.free.size() == 8);
  CHECK(f.substitution.phi[0] == s.expr("(c1*t + c2)*x + c3*t + c4"));
  CHECK(f.substitution.psi[0] == s.expr("(c1*t^2/2 + c5*t + c6)*x + c3*t^2/2 + c7*t + c8"));
  CHECK(check_nsa_approx(sys, f.substitution).passed);
}

TEST_CASE("substitution search edge cases") {
  Session lin = Session::parse(kLinear);
  PdeSystem lsys = lin.system("linwave");
  std::vector<Symbol> unknowns;
  Substitution ansatz = ansatz_from_basis(lsys, {lin.expr("1"), lin.expr("x"), lin.expr("t")}, unknowns);
  CHECK_FALSE(solve_substitution_ansatz(lsys, ansatz, unknowns).empty());

  Session heat = Session::parse(kHeat);
  PdeSystem hsys = heat.system("heat");
  Substitution cu = ansatz_from_basis(hsys, {heat.expr("u")}, unknowns);
  CHECK(solve_substitution_ansatz(hsys, cu, unknowns).empty());
}

TEST_CASE("multiplier conversion") {
  Session s = testing::session(testing::kWave);
  PdeSystem sys = s.system("wave");
  Substitution one = sub_of(s, "1 + eps");
  Multiplier m = multiplier_convert(sys, one);
  CHECK(m.mu == s.expr("u^(-1)"));
  CHECK(m.nu.is_zero());
  Multiplier alt = multiplier_convert(sys, one, StrictConvention::U);
  CHECK(alt.mu == s.expr("1/u"));
  CHECK(alt.nu == s.expr("1/u"));
  Multiplier id = multiplier_convert(sys, sub_of(s, "u"), StrictConvention::U);
  CHECK(id.mu == s.expr("1"));
  CHECK_THROWS_AS(multiplier_convert(sys, sub_of(s, "eps*u"), StrictConvention::U), ArgumentError);
  Multiplier e = multiplier_convert(sys, sub_of(s, "eps*u"), StrictConvention::EpsU);
  CHECK(e.mu == s.expr("1"));
  CHECK_THROWS_AS(multiplier_convert(sys, one, StrictConvention::EpsU), ArgumentError);

  Session two = Session::parse("vars x t; unknown u; unknown w; eq a: u_t - w_x = 0 solve u[t]; eq b: w_t - u_x = 0 solve w[t]; system ab: a, b;");
  CHECK_THROWS_AS(multiplier_convert(two.system("ab"), Substitution::from_full("p", {two.expr("1"), two.expr("1")})),
                  UnsupportedOperation);
  CHECK(parse_convention("u") == StrictConvention::U);
  CHECK_THROWS_AS(parse_convention("v"), ArgumentError);
}

TEST_CASE("strict self-adjointness after multiplication") {
  Session s = testing::session(testing::kWave);
  PdeSystem sys = s.system("wave");
  Multiplier m = multiplier_convert(sys, sub_of(s, "1 + eps"));
  CheckReport r = check_strict_sa_approx(sys, m, StrictConvention::UPlusEpsU);
  CHECK(r.passed);
  CHECK(check_strict_sa_approx(sys, m, StrictConvention::U).passed);

  Expr printed = s.expr("u^(-3)*(u^2*v_tt - 2*u*u_t*v_t - 2*u*v*u_tt + 2*v*u_t^2 - eps*u^2*v_t)"
                        " + u^(-3)*(u*F'(u) - 2*F(u))*v*u_x^2 + u^(-2)*(2*u_x*v_x + 2*v*u_xx - u*v_xx)*F(u)");
  CHECK(r.parts[1].second == printed.with_order(3));
  Expr strict = apply_substitution(printed, sub_of(s, "u"));
  CHECK(strict == -s.expr("(u_tt - Dx(F(u)*u_x) + eps*u_t)/u"));

  Multiplier unit{s.expr("1"), Expr(2), StrictConvention::U};
  CHECK_FALSE(check_strict_sa_approx(sys, unit, StrictConvention::U).passed);
  Session plain = Session::parse("vars x t; unknown u adjoint v; eq w: u_tt - u_xx = 0 solve u[t,t];");
  CHECK(check_strict_sa_approx(plain.system("w"), unit, StrictConvention::U).passed);
}
