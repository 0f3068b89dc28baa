#include <doctest.h>

#include "adjforge/error.hpp"
#include "adjforge/expr.hpp"

using namespace adjforge;

namespace {

Expr u(MultiIndex j = {}) { return Expr::atom(Atom::jet(Family::U, 0, std::move(j))); }
Expr x() { return Expr::atom(Atom::independent(0)); }
Expr t() { return Expr::atom(Atom::independent(1)); }
Coefficient mu() { return Coefficient::param(Symbol::intern("mu")); }

} // namespace

TEST_CASE("symbolic exponents add") {
  Exponent m = Exponent::from_coefficient(mu());
  Expr p = Expr::atom_power(Atom::jet(Family::U, 0), m);
  Expr q = u() * p;
  REQUIRE(q.terms().size() == 1);
  CHECK(q.terms()[0].mono[0].second == m + Exponent(1));
}

TEST_CASE("eps squared truncates") {
  Expr e = Expr::eps() * (Expr::eps() * u({1}));
  CHECK(e.is_zero());
}

TEST_CASE("mixed derivatives are stored once") {
  Expr a = u(with_index({1}, 0));
  Expr b = u(with_index({0}, 1));
  Expr s = a + b;
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].coeff == Coefficient(2));
}

TEST_CASE("equality") {
  CHECK(x() + t() == t() + x());
  CHECK_FALSE(u({1}) == u({0}));
  Expr e = (Coefficient(mu() + Coefficient(4)) * u()) / (mu() + Coefficient(4));
  CHECK(e == u());
  CHECK_THROWS_AS((void)equals(u(), u().with_order(3)), ConfigError);
}

TEST_CASE("division by a sum is rejected") {
  CHECK_THROWS_AS(u() / (u() + x()), UnsupportedOperation);
  Expr r = (u() * u()) / u();
  CHECK(r == u());
}

TEST_CASE("series inverse") {
  Expr a = Coefficient(1) + Expr::eps() * u();
  Expr inv = a.inverse();
  CHECK(inv * a == Expr(Coefficient(1)));
  Expr b = (u() + Expr::eps() * x()).with_order(4);
  CHECK(b * b.inverse() == Expr(Coefficient(1), 4));
}

TEST_CASE("evaluate") {
  Valuation val;
  val.atom = [](const Atom &a) -> std::optional<long double> {
    if (a.is_jet() && a.jet().index == MultiIndex{0})
      return 3.0L;
    if (a.is_jet() && a.jet().index == MultiIndex{1})
      return 5.0L;
    return std::nullopt;
  };
  val.eps = 0.1L;
  CHECK(evaluate(Coefficient(2) * u({0}), val) == doctest::Approx(6.0));
  CHECK(evaluate(Expr::eps() * u({1}), val) == doctest::Approx(0.5));
  CHECK_THROWS_AS(evaluate(u(), val), UnboundAtom);
}

TEST_CASE("truncate") {
  Expr e = (Coefficient(1) + Expr::eps(1, 3) * x().with_order(3) + Expr::eps(2, 3) * t().with_order(3));
  Expr r = truncate(e, 2);
  CHECK(r == Coefficient(1) + Expr::eps() * x());
  CHECK(truncate(Expr::eps() * u(), 1).is_zero());
  CHECK(truncate(r, 2) == r);
}
