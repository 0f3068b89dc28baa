#pragma once

#include <random>

#include "adjforge/expr.hpp"

namespace testing {

/// Random expressions over x, t, u, v and F(u) on the second jet.
class ExprGen {
public:
  explicit ExprGen(std::uint64_t seed, int order = 2) : rng_(seed), order_(order) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  adjforge::Rational rational(int lo, int hi, int max_den) {
    adjforge::Rational q(pick(lo, hi), pick(1, max_den));
    q.canonicalize();
    return q;
  }

  adjforge::Coefficient coefficient() {
    using adjforge::Coefficient;
    Coefficient c(rational(-4, 4, 3));
    if (c.is_zero())
      c = Coefficient(1);
    if (pick(0, 4) == 0)
      c = c * (Coefficient::param(mu()) + Coefficient(pick(1, 3)));
    return c;
  }

  adjforge::Atom atom(std::size_t max_jet = 2) {
    using namespace adjforge;
    switch (pick(0, 5)) {
    case 0:
      return Atom::independent(static_cast<std::uint8_t>(pick(0, 1)));
    case 1:
    case 2:
      return Atom::jet(Family::U, 0, index(max_jet));
    case 3:
      return Atom::jet(Family::V, 0, index(max_jet));
    default: {
      FuncApp f{adjforge::Symbol::intern("F"), FuncRule::Abstract, {FuncArg{true, Family::U, 0}}, {}};
      f.derivs.assign(static_cast<std::size_t>(pick(0, 2)), 0);
      return Atom(f);
    }
    }
  }

  adjforge::Expr term(std::size_t max_jet = 2) {
    using adjforge::Expr;
    Expr e(coefficient(), order_);
    if (pick(0, 3) == 0)
      e *= Expr::eps(1, order_);
    const int n = pick(0, 3);
    for (int k = 0; k < n; ++k)
      e *= Expr::atom(atom(max_jet), order_).pow(pick(1, 2));
    return e;
  }

  /// Sum of up to `max_terms` random terms of derivative order <= max_jet.
  adjforge::Expr expr(int max_terms = 4, std::size_t max_jet = 2) {
    adjforge::Expr e(order_);
    const int n = pick(1, max_terms);
    for (int k = 0; k < n; ++k)
      e += term(max_jet);
    return e;
  }

  /// Unnormalized tree with sums, products, negation and small powers.
  std::shared_ptr<const adjforge::Tree> tree(int depth = 3) {
    using adjforge::Tree;
    if (depth == 0 || pick(0, 3) == 0) {
      switch (pick(0, 3)) {
      case 0:
        return Tree::num(rational(-3, 3, 2));
      case 1:
        return Tree::par(mu());
      case 2:
        return Tree::epsilon();
      default:
        return Tree::leaf(atom());
      }
    }
    switch (pick(0, 3)) {
    case 0:
      return Tree::node(Tree::Kind::Add, {tree(depth - 1), tree(depth - 1)});
    case 1:
      return Tree::node(Tree::Kind::Mul, {tree(depth - 1), tree(depth - 1)});
    case 2:
      return Tree::node(Tree::Kind::Neg, {tree(depth - 1)});
    default:
      return Tree::pow(tree(depth - 1), pick(0, 3));
    }
  }

  static adjforge::Symbol mu() { return adjforge::Symbol::intern("mu"); }

private:
  adjforge::MultiIndex index(std::size_t max_jet) {
    adjforge::MultiIndex j;
    const int n = pick(0, static_cast<int>(max_jet));
    for (int k = 0; k < n; ++k)
      j = adjforge::with_index(j, static_cast<std::uint8_t>(pick(0, 1)));
    return j;
  }

  std::mt19937_64 rng_;
  int order_;
};

} // namespace testing
