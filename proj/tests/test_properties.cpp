#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "adjforge/jet.hpp"
#include "adjforge/render.hpp"
#include "adjforge/selfadjoint.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace adjforge;

namespace {

constexpr int kSamples = 200;

Valuation random_valuation(std::mt19937_64 &rng, std::map<Atom, long double> &cache) {
  auto draw = [&rng]() { return std::uniform_real_distribution<long double>(0.5L, 1.5L)(rng); };
  Valuation v;
  v.atom = [&cache, draw](const Atom &a) -> std::optional<long double> {
    auto it = cache.find(a);
    if (it == cache.end())
      it = cache.emplace(a, draw()).first;
    return it->second;
  };
  const long double mu = draw();
  v.param = [mu](Symbol) -> std::optional<long double> { return mu; };
  v.eps = draw();
  return v;
}

bool close(long double a, long double b) { return std::fabs(a - b) <= 1e-12L * std::max({1.0L, std::fabs(a), std::fabs(b)}); }

Poly random_poly(testing::ExprGen &g, Symbol a, Symbol b) {
  Poly p;
  const int n = g.pick(1, 3);
  for (int k = 0; k < n; ++k)
    p += Poly(g.rational(-3, 3, 2)) * Poly::variable(a).pow(static_cast<unsigned>(g.pick(0, 2))) *
         Poly::variable(b).pow(static_cast<unsigned>(g.pick(0, 2)));
  return p.is_zero() ? Poly(1) : p;
}

} // namespace

TEST_CASE("ring laws on random expressions") {
  testing::ExprGen g(1);
  for (int k = 0; k < kSamples; ++k) {
    Expr a = g.expr(), b = g.expr(), c = g.expr();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("normalize is idempotent and agrees with direct construction") {
  testing::ExprGen g(2);
  for (int k = 0; k < kSamples; ++k) {
    auto t = g.tree(4);
    Expr once = normalize(*t);
    CHECK(normalize(once) == once);
    Expr e = g.expr();
    CHECK(normalize(e) == e);
  }
}

TEST_CASE("Euler operator annihilates total divergences") {
  testing::ExprGen g(3);
  for (int k = 0; k < kSamples; ++k) {
    Expr a = g.expr(3, 2), b = g.expr(3, 2);
    Expr div = total_derivative(a, 0) + total_derivative(b, 1);
    CHECK(variational_derivative(div, Family::U, 0).is_zero());
    CHECK(variational_derivative(div, Family::V, 0).is_zero());
  }
}

TEST_CASE("total derivatives commute and obey Leibniz") {
  testing::ExprGen g(4);
  for (int k = 0; k < kSamples; ++k) {
    Expr a = g.expr(), b = g.expr();
    CHECK(total_derivative(total_derivative(a, 0), 1) == total_derivative(total_derivative(a, 1), 0));
    CHECK(total_derivative(a * b, 0) == total_derivative(a, 0) * b + a * total_derivative(b, 0));
  }
}

TEST_CASE("truncation is a ring homomorphism") {
  testing::ExprGen g(5);
  for (int k = 0; k < kSamples; ++k) {
    Expr a = g.expr(), b = g.expr();
    CHECK(truncate(a * b, 1) == truncate(a, 1) * truncate(b, 1));
    CHECK(truncate(a + b, 1) == truncate(a, 1) + truncate(b, 1));
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  testing::ExprGen g(6, 4);
  std::mt19937_64 rng(6);
  for (int k = 0; k < kSamples; ++k) {
    Expr a = g.expr(), b = g.expr();
    std::map<Atom, long double> cache;
    Valuation v = random_valuation(rng, cache);
    CHECK(close(evaluate(a * b, v), evaluate(a, v) * evaluate(b, v)));
    CHECK(close(evaluate(a + b, v), evaluate(a, v) + evaluate(b, v)));
  }
}

TEST_CASE("rendering round-trips through the parser") {
  Session s = testing::session(testing::kWave);
  testing::ExprGen g(7);
  for (int k = 0; k < kSamples; ++k) {
    Expr e = g.expr();
    const std::string text = render(e, s.space());
    CAPTURE(text);
    Expr back = s.expr(text);
    CHECK(back == e);
    CHECK(render(back, s.space()) == text);
    CHECK(s.expr(render_factored(e, s.space())) == e);
  }
}

TEST_CASE("polynomial gcd divides and keeps common factors") {
  testing::ExprGen g(8);
  Symbol a = Symbol::intern("gcd_a"), b = Symbol::intern("gcd_b");
  for (int k = 0; k < kSamples; ++k) {
    Poly p = random_poly(g, a, b), q = random_poly(g, a, b), r = random_poly(g, a, b);
    Poly d = gcd(p * r, q * r);
    CHECK_NOTHROW(exact_divide(p * r, d));
    CHECK_NOTHROW(exact_divide(q * r, d));
    CHECK_NOTHROW(exact_divide(d, r.monic()));
  }
}

TEST_CASE("multiplier round trip over the wave substitution family") {
  Session s = testing::bundled("wave");
  PdeSystem sys = s.system("wave");
  const Substitution family = s.substitution("eq20");
  testing::ExprGen g(9);
  for (int k = 0; k < 20; ++k) {
    Substitution sub = family;
    for (int i = 1; i <= 8; ++i) {
      Coefficient value(g.pick(-3, 3));
      if (i == 4 && value.is_zero())
        value = Coefficient(1);
      for (auto *part : {&sub.phi[0], &sub.psi[0]})
        *part = part->substitute_param(Symbol::intern("c" + std::to_string(i)), value);
    }
    REQUIRE(check_nsa_approx(sys, sub).passed);
    Multiplier m = multiplier_convert(sys, sub);
    CHECK(check_strict_sa_approx(sys, m, StrictConvention::UPlusEpsU).passed);
    const Expr u = s.expr("u");
    CHECK(u * m.mu == sub.phi[0]);
    CHECK(u * (m.mu + m.nu) == sub.psi[0]);
  }
}
