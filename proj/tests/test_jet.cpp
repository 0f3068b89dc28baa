#include <doctest.h>

#include "adjforge/error.hpp"
#include "adjforge/jet.hpp"
#include "support.hpp"

using namespace adjforge;

TEST_CASE("total derivative on a generic jet space") {
  Session s = Session::parse("vars y z; unknown w;");
  CHECK(total_derivative(s.expr("w"), 0) == s.expr("w[y]"));
  CHECK(total_derivative(s.expr("w[y]"), 0) == s.expr("w[y,y]"));
  CHECK(total_derivative(s.expr("w[z]"), 0) == s.expr("w[y,z]"));
  CHECK(total_derivative(s.expr("7"), 1).is_zero());
}

TEST_CASE("total derivative chain rule") {
  Session s = testing::session(testing::kWave);
  Expr d = total_derivative(s.expr("F(u)*u[x]"), 0);
  CHECK(d == s.expr("F'(u)*u[x]^2 + F(u)*u[x,x]"));
  CHECK(s.expr("Dx(F(u)*u_x)") == d);
}

TEST_CASE("partial_jet") {
  Session s = testing::session(testing::kWave);
  CHECK(partial_jet(s.expr("u[x]^2"), JetCoord{Family::U, 0, {0}}) == s.expr("2*u[x]"));
  CHECK(partial_jet(s.expr("v*u[t,t]"), JetCoord{Family::U, 0, {1, 1}}) == s.expr("v"));
  CHECK(partial_jet(s.expr("F(u)"), JetCoord{Family::U, 0, {}}) == s.expr("F'(u)"));
}

TEST_CASE("variational derivative examples") {
  Session heat = Session::parse("vars x t; unknown u adjoint v; eq heat: u_t - u^2*u_xx = 0 solve u[t];");
  Expr l = heat.expr("v*(u_t - u^2*u_xx)");
  Expr printed = heat.expr("v_t + 4*u*v*u_xx + u^2*v_xx + 4*u*u_x*v_x + 2*v*u_x^2");
  CHECK(variational_derivative(l, Family::U, 0) == -printed);

  Session s = testing::session(testing::kWave);
  Expr lw = s.expr("v*(u[t,t] - Dx(F(u)*u[x]) + eps*u[t])");
  CHECK(variational_derivative(lw, Family::V, 0) == s.expr("u[t,t] - Dx(F(u)*u[x]) + eps*u[t]"));
  CHECK(variational_derivative(lw, Family::U, 0) == s.expr("v[t,t] - F(u)*v[x,x] - eps*v[t]"));
  CHECK(variational_derivative(s.expr("Dx(u*u[x])"), Family::U, 0).is_zero());
}

TEST_CASE("prolongation examples") {
  Session s = Session::parse(std::string(testing::kWave) +
                             "gen X1: xi_x = 1;\n gen X3: xi_x = x; xi_t = t;\n gen X5: xi_x = mu*x; eta_u = 2*u;\n");
  auto zeta = [&](const ProlongedGenerator &pg, const char *name) {
    Expr c = s.expr(name);
    return pg.zeta.at(c.terms()[0].mono[0].first.jet());
  };
  ProlongedGenerator p1 = prolong(s.generator("X1"), 2, 2);
  for (const auto &[k, z] : p1.zeta)
    CHECK(z.is_zero());
  ProlongedGenerator p3 = prolong(s.generator("X3"), 2, 2);
  CHECK(zeta(p3, "u_t") == s.expr("-u_t"));
  CHECK(zeta(p3, "u_x") == s.expr("-u_x"));
  CHECK(zeta(p3, "u_tt") == s.expr("-2*u_tt"));
  ProlongedGenerator p5 = prolong(s.generator("X5"), 2, 2);
  CHECK(zeta(p5, "u_x") == s.expr("(2-mu)*u_x"));
  CHECK(zeta(p5, "u_t") == s.expr("2*u_t"));
  CHECK(zeta(p5, "u_xx") == s.expr("(2-2*mu)*u_xx"));
  CHECK(zeta(p5, "u_tt") == s.expr("2*u_tt"));
  CHECK_THROWS_AS(prolong(s.generator("X1"), 0, 2), ArgumentError);
}

TEST_CASE("apply_generator examples") {
  Session s = Session::parse(std::string(testing::kWave) + "gen X2: xi_t = 1;\n gen X3: xi_x = x; xi_t = t;\n");
  Expr e0 = s.expr("u_tt - Dx(F(u)*u_x)");
  CHECK(apply_generator(prolong(s.generator("X2"), 2, 2), s.expr("u_tt - u_xx")).is_zero());
  CHECK(apply_generator(prolong(s.generator("X3"), 2, 2), e0) == s.expr("-2") * e0);
  CHECK_THROWS_AS(apply_generator(prolong(s.generator("X3"), 1, 2), e0), ArgumentError);

  Session p = Session::parse("vars x t; unknown u; param mu; func F(u) power mu;"
                             "gen X5: xi_x = mu*x; eta_u = 2*u;");
  Expr ep = p.expr("u_tt - Dx(F(u)*u_x)");
  Expr r = apply_generator(prolong(p.generator("X5"), 2, 2), ep);
  CHECK(r == p.expr("2") * ep);
}

TEST_CASE("substitute_dependent examples") {
  Session s = testing::session(testing::kWave);
  CHECK(substitute_dependent(s.expr("v_t"), Family::V, 0, s.expr("u^(-2)")) == s.expr("-2*u^(-3)*u_t"));
  CHECK(substitute_dependent(s.expr("v_tt - F(u)*v_xx - eps*v_t"), Family::V, 0, s.expr("x")).is_zero());
  CHECK_THROWS_AS(substitute_dependent(s.expr("v"), Family::V, 0, s.expr("v_x")), ArgumentError);
}

TEST_CASE("reduce_on_manifold") {
  Session s = testing::session(testing::kWave);
  PdeSystem sys = s.system("wave");
  auto forms = sys.solved_forms();
  Expr rhs = s.expr("F(u)*u_xx + F'(u)*u_x^2 - eps*u_t");
  CHECK(forms[0].rhs == rhs);
  CHECK(reduce_on_manifold(s.expr("u_tt"), forms) == rhs);
  Expr third = reduce_on_manifold(s.expr("u_ttx"), forms);
  CHECK(third == reduce_on_manifold(total_derivative(rhs, 0), forms));
  CHECK(reduce_on_manifold(third, forms) == third);
  CHECK_FALSE(third.has_atom([](const Atom &a) { return a.is_jet() && contains(a.jet().index, {1, 1}); }));
}

TEST_CASE("circular solved forms are rejected") {
  Session s = Session::parse("vars x t; unknown u; unknown w;");
  SolvedForm a{JetCoord{Family::U, 0, {1}}, s.expr("w_x")};
  SolvedForm b{JetCoord{Family::U, 1, {0}}, s.expr("u_t")};
  CHECK_THROWS_AS(reduce_on_manifold(s.expr("u_t"), {a, b}), ConfigError);
}
