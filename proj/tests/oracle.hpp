#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "adjforge/expr.hpp"
#include "adjforge/pde_system.hpp"

namespace testing {

/// Value together with a directional derivative.
struct Dual {
  long double v = 0;
  long double d = 0;
};

inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }

inline Dual power(Dual a, long double p) {
  if (p == 0)
    return {1, 0};
  return {std::pow(a.v, p), p * std::pow(a.v, p - 1) * a.d};
}

/// Evaluates `e` term by term with forward-mode derivatives; no symbolic
/// differentiation is involved.
inline Dual evaluate_dual(const adjforge::Expr &e, const std::function<Dual(const adjforge::Atom &)> &atom,
                          const std::function<long double(adjforge::Symbol)> &param, long double eps) {
  Dual sum;
  for (const adjforge::Term &t : e.terms()) {
    Dual v{t.coeff.evaluate(param) * std::pow(eps, static_cast<long double>(t.eps)), 0};
    for (const auto &[a, ex] : t.mono)
      v = v * power(atom(a), ex.evaluate(param));
    sum.v += v.v;
    sum.d += v.d;
  }
  return sum;
}

/// Random point of the second jet of one dependent variable in (x, t), with
/// u_tt taken from the equation so the point lies on the manifold.
struct JetPoint {
  long double x = 0, t = 0;
  /// u_J keyed by the number of x and t derivatives.
  std::map<std::pair<int, int>, long double> u;

  static std::pair<int, int> key(const adjforge::MultiIndex &j) {
    int nx = 0;
    for (auto i : j)
      nx += i == 0;
    return {nx, static_cast<int>(j.size()) - nx};
  }
  long double &operator[](const adjforge::MultiIndex &j) { return u[key(j)]; }
  long double value(const adjforge::MultiIndex &j) const { return u.at(key(j)); }
  long double eps = 0;
  std::function<long double(adjforge::Symbol)> param;

  /// Value of an atom; D_i values come from the next jet order.
  Dual at(const adjforge::Atom &a, int direction) const {
    using namespace adjforge;
    if (a.is_base()) {
      long double v = a.base().index == 0 ? x : t;
      return {v, a.base().index == direction ? 1.0L : 0.0L};
    }
    if (a.is_jet()) {
      const MultiIndex &j = a.jet().index;
      return {value(j), direction < 0 ? 0.0L : value(with_index(j, static_cast<std::uint8_t>(direction)))};
    }
    // exp(u) is the only function application in the oracle systems
    long double ex = std::exp(value({}));
    return {ex, direction < 0 ? 0.0L : ex * value({static_cast<std::uint8_t>(direction)})};
  }
};

inline long double nonzero(std::mt19937_64 &rng) {
  std::uniform_real_distribution<long double> d(-2, 2);
  long double v = 0;
  while (std::fabs(v) < 1e-3L)
    v = d(rng);
  return v;
}

/// Draws a point and solves the (affine in u_tt) equation numerically. Third
/// derivatives that the divergence never reaches are left random.
inline JetPoint random_point(std::mt19937_64 &rng, const adjforge::Expr &equation, long double eps,
                             std::function<long double(adjforge::Symbol)> param) {
  using adjforge::MultiIndex;
  JetPoint p;
  p.eps = eps;
  p.param = std::move(param);
  p.x = nonzero(rng);
  p.t = nonzero(rng);
  for (const MultiIndex &j : {MultiIndex{}, MultiIndex{0}, MultiIndex{1}, MultiIndex{0, 0}, MultiIndex{0, 1},
                              MultiIndex{0, 0, 0}, MultiIndex{0, 0, 1}, MultiIndex{0, 1, 1}, MultiIndex{1, 1, 1}})
    p[j] = nonzero(rng);
  auto value = [&](long double utt) {
    p[{1, 1}] = utt;
    return evaluate_dual(equation, [&](const adjforge::Atom &a) { return p.at(a, -1); }, p.param, eps).v;
  };
  const long double e0 = value(0);
  const long double e1 = value(1);
  p[{1, 1}] = -e0 / (e1 - e0);
  return p;
}

/// sum_i D_i C^i at the point, by forward-mode evaluation.
inline long double numeric_divergence(const std::vector<adjforge::Expr> &c, const JetPoint &p) {
  long double div = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int dir = static_cast<int>(i);
    div += evaluate_dual(c[i], [&](const adjforge::Atom &a) { return p.at(a, dir); }, p.param, p.eps).d;
  }
  return div;
}

} // namespace testing
