#include <doctest.h>

#include <cmath>
#include <random>

#include "adjforge/conslaw.hpp"
#include "adjforge/error.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace adjforge;

namespace {

constexpr std::size_t kX = 0;
constexpr std::size_t kT = 1;

Expr at_working(const Session &s, const char *text) { return s.expr(text).with_order(kConslawWorkingOrder); }

} // namespace

TEST_CASE("characteristic") {
  Session e = testing::bundled("wave_exp");
  CHECK(characteristic(e.generator("X4t"), 2)[0] == e.expr("-2*eps*t - x*u_x - (t + eps*t^2/2)*u_t"));
  Session p = testing::bundled("wave_pow");
  CHECK(characteristic(p.generator("X6t"), 2)[0] ==
        p.expr("-2*u/mu - 2*eps*t*u/(mu+4) - (t + eps*mu*t^2/(2*(mu+4)))*u_t"));
  CHECK(characteristic(p.generator("X1"), 2)[0] == p.expr("-u_x"));
}

TEST_CASE("conserved vector template with a symbolic characteristic") {
  Session s = testing::bundled("wave");
  PdeSystem sys = s.system("wave");
  ConslawOptions raw;
  raw.simplify = false;
  ConservedVector cv = conserved_vector(sys, std::vector<Expr>{s.expr("W")}, std::nullopt, raw);
  CHECK(cv.nonlocal());
  CHECK(cv.components[kT] == s.expr("W*(eps*v - v_t) + v*W_t"));
  CHECK(cv.components[kX] == s.expr("W*(F(u)*v_x - F'(u)*u_x*v) - W_x*F(u)*v"));
  CHECK_THROWS_AS(conserved_vector(sys, std::vector<Expr>{s.expr("W")}, std::nullopt, {true, true}), ArgumentError);
}

TEST_CASE("conserved vector of the exponential case") {
  Session s = testing::bundled("wave_exp");
  PdeSystem sys = s.system("wave");
  ConservedVector cv = conserved_vector(sys, s.generator("X4t"), std::nullopt);
  CHECK(cv.components[kT] ==
        s.expr("t*exp(u)*u_x*v_x + x*v_t*u_x + t*u_t*v_t + x*u_t*v_x"
               " + eps/2*(t^2*u_t*v_t + 4*t*v_t + t^2*exp(u)*u_x*v_x - 2*t*u_t*v - 2*x*u_x*v - 4*v)"));
  CHECK(cv.components[kX] ==
        s.expr("-t*exp(u)*u_t*v_x - x*u_t*v_t - t*exp(u)*u_x*v_t - x*exp(u)*u_x*v_x"
               " + eps*(x*u_t*v + t*exp(u)*u_x*v - t*exp(u)*(t*u_x*v_t + t*u_t*v_x + 4*v_x)/2)"));
  CHECK_THROWS_AS(verify_divergence(cv, sys), ConfigError);
  std::vector<SolvedForm> adj = adjoint_solved_forms(sys);
  CHECK(verify_divergence(cv, sys, &adj).passed);

  ConservedVector vx = conserved_vector(sys, s.generator("X4t"), s.substitution("v_x"));
  CHECK_FALSE(vx.nonlocal());
  CHECK(vx.components[kT] == s.expr("x*u_t + t*exp(u)*u_x + eps*(t^2*exp(u)*u_x/2 - x^2*u_x - t*x*u_t)"));
  CHECK(vx.components[kX] ==
        s.expr("-t*exp(u)*u_t - x*exp(u)*u_x + eps*(-t^2*exp(u)*u_t/2 + x^2*u_t + t*x*exp(u)*u_x - 2*t*exp(u))"));
  CheckReport r = verify_divergence(vx, sys);
  CHECK(r.passed);
  CHECK(r.residual == (Expr::eps(2, 3) * s.expr("x*(t*u_t - 2)").with_order(3)));
}

TEST_CASE("conserved vector of the power case") {
  Session s = testing::bundled("wave_pow");
  PdeSystem sys = s.system("wave");
  ConservedVector cv = conserved_vector(sys, s.generator("X6t"), s.substitution("v_x_eps_t"));
  CHECK(cv.components[kT] == s.expr("t*u^mu*u_x - (2/mu + 1)*x*u_t + eps/(2*mu*(mu+4))*(mu^2*t^2*u^mu*u_x"
                                    " - 2*t*(mu^2*x + 2*mu*(x+1) + 8)*u_t - 4*(2*mu*x - mu + 4*x - 4)*u)"));
  CHECK(cv.components[kX] == s.expr("x*u_x*u^mu - t*u_t*u^mu + 2/mu*(x*u_x - u)*u^mu - eps*t*u^mu/(2*mu*(mu+4))"
                                    "*(mu^2*t*u_t - 2*mu^2*x*u_x - 4*mu*(x+1)*u_x - 16*u_x + 4*mu*u)"));
  CheckReport r = verify_divergence(cv, sys);
  CHECK(r.passed);
  const Expr e2 = Expr::eps(2, kConslawWorkingOrder);
  const Expr eps = Expr::eps(1, kConslawWorkingOrder);
  Expr printed = -e2 / at_working(s, "2*mu*(mu+4)") *
                 (at_working(s, "2*mu^2*t*u_t + 8*mu*t*u_t + 4*mu*u*(x+1) + 16*u") -
                  at_working(s, "mu^2*t*u_t") * (at_working(s, "2*x") + eps * at_working(s, "t")) +
                  eps * at_working(s, "8*mu*u*t"));
  CHECK(r.parts[0].second == printed);
  CHECK(r.residual == printed.with_order(3));
}

TEST_CASE("omitting xi L changes the divergence only on the manifold") {
  for (const char *session : {"wave_exp", "wave_pow"}) {
    Session s = testing::bundled(session);
    PdeSystem sys = s.system("wave");
    const char *gen = std::string(session) == "wave_exp" ? "X4t" : "X6t";
    const char *sub = std::string(session) == "wave_exp" ? "v_x" : "v_x_eps_t";
    ConslawOptions keep;
    keep.keep_xi_l = true;
    ConservedVector with = conserved_vector(sys, s.generator(gen), s.substitution(sub), keep);
    ConservedVector without = conserved_vector(sys, s.generator(gen), s.substitution(sub));
    CHECK_FALSE(with.omitted_xi_l);
    CheckReport a = verify_divergence(with, sys);
    CheckReport b = verify_divergence(without, sys);
    CHECK(a.parts[0].second == b.parts[0].second);
  }
}

TEST_CASE("divergence agrees with a forward-mode numeric oracle") {
  std::mt19937_64 rng(20261014);
  struct Case {
    const char *session, *gen, *sub;
  };
  for (Case c : {Case{"wave_exp", "X4t", "v_x"}, Case{"wave_pow", "X6t", "v_x_eps_t"}}) {
    Session s = testing::bundled(c.session);
    PdeSystem sys = s.system("wave").with_order(kConslawWorkingOrder);
    ConservedVector cv = conserved_vector(sys, s.generator(c.gen), s.substitution(c.sub));
    for (const Expr &e : cv.full)
      REQUIRE(max_order(e, Family::U) <= 1);
    Expr symbolic = verify_divergence(cv, sys).parts[0].second;
    Symbol mu = Symbol::intern("mu");
    for (int k = 0; k < 100; ++k) {
      const long double mu_value = 1 + k % 3;
      auto param = [&](Symbol p) -> long double {
        if (p == mu)
          return mu_value;
        throw UnboundAtom("unexpected parameter " + p.name());
      };
      testing::JetPoint p = testing::random_point(rng, sys.full(0), 1e-3L, param);
      long double num = testing::numeric_divergence(cv.full, p);
      Valuation val{[&](const Atom &a) -> std::optional<long double> { return p.at(a, -1).v; },
                    [&](Symbol q) -> std::optional<long double> { return param(q); }, p.eps};
      long double sym = evaluate(symbolic, val);
      long double scale = std::max(std::fabs(sym), std::fabs(num));
      CAPTURE(k);
      CHECK(std::fabs(num - sym) <= 1e-9L * scale);
    }
  }
}

TEST_CASE("time translation on the unperturbed wave equation") {
  Session s = Session::parse(R"(
vars x t; unknown u adjoint v; param eps 2;
func F(u) exp;
eq w0: u_tt - Dx(F(u)*u_x) = 0 solve u[t,t];
gen X2: xi_t = 1;
sub one: v = 1;
)");
  PdeSystem sys = s.system("w0");
  ConservedVector cv = conserved_vector(sys, s.generator("X2"), s.substitution("one"));
  CheckReport r = verify_divergence(cv, sys);
  CHECK(r.parts[0].second.is_zero());
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    testing::JetPoint p = testing::random_point(rng, sys.full(0).with_order(kConslawWorkingOrder), 0,
                                                [](Symbol) -> long double { return 0; });
    CHECK(std::fabs(testing::numeric_divergence(cv.full, p)) < 1e-12L);
  }
}

TEST_CASE("conserved vector preconditions") {
  Session s = Session::parse("vars x t; unknown u adjoint v; eq k: u_t + u_xxxx = 0 solve u[t]; gen X1: xi_x = 1;");
  CHECK_THROWS_AS(conserved_vector(s.system("k"), s.generator("X1"), std::nullopt), UnsupportedOperation);
}
