#include "adjforge/jet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "adjforge/error.hpp"

namespace adjforge {

namespace {

constexpr int kMaxProlongation = 4;

Expr one(int order) { return Expr(Coefficient(1), order); }

/// d F / d(slot)
Expr slot_derivative(const FuncApp &f, std::uint8_t slot, int order) {
  if (f.rule == FuncRule::Exponential)
    return Expr::atom(Atom(f), order);
  FuncApp g = f;
  g.derivs.insert(std::upper_bound(g.derivs.begin(), g.derivs.end(), slot), slot);
  return Expr::atom(Atom(std::move(g)), order);
}

Expr arg_total_derivative(const FuncArg &a, std::uint8_t i, int order) {
  if (!a.dependent)
    return a.index == i ? one(order) : Expr(order);
  return Expr::atom(Atom::jet(a.family, a.index, {i}), order);
}

Expr funcapp_total_derivative(const FuncApp &f, std::uint8_t i, int order) {
  Expr out(order);
  for (std::size_t k = 0; k < f.args.size(); ++k) {
    Expr da = arg_total_derivative(f.args[k], i, order);
    if (!da.is_zero())
      out += slot_derivative(f, static_cast<std::uint8_t>(k), order) * da;
  }
  return out;
}

void enumerate_indices(std::size_t n, std::size_t len, std::uint8_t from, MultiIndex &cur,
                       std::vector<MultiIndex> &out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (std::uint8_t i = from; i < n; ++i) {
    cur.push_back(i);
    enumerate_indices(n, len, i, cur, out);
    cur.pop_back();
  }
}

} // namespace

Expr total_derivative(const Expr &e, std::uint8_t i) {
  const int order = e.order();
  return e.differentiate([&](const Atom &a) -> std::optional<Expr> {
    if (a.is_base())
      return a.base().index == i ? std::optional<Expr>(one(order)) : std::nullopt;
    if (a.is_jet()) {
      const JetCoord &j = a.jet();
      return Expr::atom(Atom::jet(j.family, j.sigma, with_index(j.index, i)), order);
    }
    return funcapp_total_derivative(a.func(), i, order);
  });
}

Expr total_derivative(const Expr &e, const MultiIndex &j) {
  Expr r = e;
  for (auto i : j)
    r = total_derivative(r, i);
  return r;
}

Expr partial_jet(const Expr &e, const JetCoord &c) {
  const int order = e.order();
  return e.differentiate([&](const Atom &a) -> std::optional<Expr> {
    if (a.is_jet())
      return a.jet() == c ? std::optional<Expr>(one(order)) : std::nullopt;
    if (a.is_func() && c.index.empty()) {
      const FuncApp &f = a.func();
      Expr out(order);
      for (std::size_t k = 0; k < f.args.size(); ++k)
        if (f.args[k].dependent && f.args[k].family == c.family && f.args[k].index == c.sigma)
          out += slot_derivative(f, static_cast<std::uint8_t>(k), order);
      return out;
    }
    return std::nullopt;
  });
}

Expr partial_independent(const Expr &e, std::uint8_t i) {
  const int order = e.order();
  return e.differentiate([&](const Atom &a) -> std::optional<Expr> {
    if (a.is_base())
      return a.base().index == i ? std::optional<Expr>(one(order)) : std::nullopt;
    if (a.is_func()) {
      const FuncApp &f = a.func();
      Expr out(order);
      for (std::size_t k = 0; k < f.args.size(); ++k)
        if (!f.args[k].dependent && f.args[k].index == i)
          out += slot_derivative(f, static_cast<std::uint8_t>(k), order);
      return out;
    }
    return std::nullopt;
  });
}

std::vector<JetCoord> coordinates(const Expr &e, Family f, std::uint32_t sigma) {
  std::set<JetCoord> s;
  for (const Atom &a : e.atoms())
    if (a.is_jet() && a.jet().family == f && a.jet().sigma == sigma)
      s.insert(a.jet());
  return {s.begin(), s.end()};
}

std::size_t max_order(const Expr &e, Family f) {
  std::size_t m = 0;
  for (const Atom &a : e.atoms())
    if (a.is_jet() && a.jet().family == f)
      m = std::max(m, a.jet().order());
  return m;
}

Expr variational_derivative(const Expr &e, Family f, std::uint32_t sigma) {
  std::set<JetCoord> coords;
  coords.insert(JetCoord{f, sigma, {}});
  for (const auto &c : coordinates(e, f, sigma))
    coords.insert(c);
  Expr out(e.order());
  for (const JetCoord &c : coords) {
    Expr term = total_derivative(partial_jet(e, c), c.index);
    if (c.order() % 2)
      out -= term;
    else
      out += term;
  }
  return out;
}

Expr substitute_dependent(const Expr &e, Family family, std::uint32_t sigma, const Expr &s) {
  if (s.has_atom([&](const Atom &a) { return a.involves(family) && family != Family::U; }))
    throw ArgumentError("substituted expression contains coordinates of the replaced family");
  if (family == Family::U &&
      s.has_atom([&](const Atom &a) { return a.involves(Family::U) && a.is_jet() && a.jet().sigma == sigma; }))
    throw ArgumentError("substituted expression refers to the replaced variable");
  const int order = e.order();
  const Expr sub = s.with_order(order);
  std::map<MultiIndex, Expr> derived;
  std::function<const Expr &(const MultiIndex &)> derivative = [&](const MultiIndex &j) -> const Expr & {
    auto it = derived.find(j);
    if (it != derived.end())
      return it->second;
    Expr d = j.empty() ? sub : total_derivative(derivative(MultiIndex(j.begin(), j.end() - 1)), j.back());
    return derived.emplace(j, std::move(d)).first->second;
  };
  return e.substitute_atoms([&](const Atom &a) -> std::optional<Expr> {
    if (a.is_jet()) {
      const JetCoord &c = a.jet();
      if (c.family == family && c.sigma == sigma)
        return derivative(c.index);
      return std::nullopt;
    }
    if (!a.is_func() || !a.involves(family))
      return std::nullopt;
    const FuncApp &f = a.func();
    std::optional<std::size_t> slot;
    for (std::size_t k = 0; k < f.args.size(); ++k)
      if (f.args[k].dependent && f.args[k].family == family && f.args[k].index == sigma)
        slot = k;
    if (!slot)
      return std::nullopt;
    Expr base = sub.eps_part(0);
    Expr rest = sub - base;
    if (!base.is_unit() || !base.terms()[0].coeff.is_one() || base.terms()[0].mono.size() != 1 ||
        !(base.terms()[0].mono[0].second == Exponent(1)))
      throw UnsupportedOperation("function argument must be replaced by a variable plus eps terms");
    const Atom &va = base.terms()[0].mono[0].first;
    FuncArg na;
    if (va.is_base()) {
      na = FuncArg{false, Family::U, va.base().index};
    } else if (va.is_jet() && va.jet().index.empty()) {
      na = FuncArg{true, va.jet().family, va.jet().sigma};
    } else {
      throw UnsupportedOperation("function argument must be replaced by a variable plus eps terms");
    }
    FuncApp g = f;
    g.args[*slot] = na;
    // Taylor series in the eps part of the replacement
    Expr out(order);
    Expr power = one(order);
    Coefficient fact(1);
    FuncApp cur = g;
    for (int k = 0; k < order; ++k) {
      if (k > 0) {
        power *= rest;
        fact *= Coefficient(k);
        if (cur.rule == FuncRule::Abstract)
          cur.derivs.insert(std::upper_bound(cur.derivs.begin(), cur.derivs.end(), *slot),
                            static_cast<std::uint8_t>(*slot));
      }
      if (power.is_zero())
        break;
      out += Expr::atom(Atom(cur), order) * power / fact;
    }
    return out;
  });
}

Expr leading_coefficient(const Expr &equation, const JetCoord &leading) {
  Expr a = partial_jet(equation, leading);
  if (!partial_jet(a, leading).is_zero())
    throw ArgumentError("equation is not affine in its leading derivative");
  return a;
}

SolvedForm solve_for(const Expr &equation, const JetCoord &leading) {
  if (leading.index.empty())
    throw ArgumentError("leading coordinate must be a derivative");
  Expr a = leading_coefficient(equation, leading);
  if (a.is_zero())
    throw ArgumentError("leading derivative does not occur in the equation");
  Expr b = equation - a * Expr::atom(Atom(leading), equation.order());
  auto bad = [&](const Atom &at) {
    return at.is_jet() && at.jet().family == leading.family && at.jet().sigma == leading.sigma &&
           contains(at.jet().index, leading.index);
  };
  if (a.has_atom(bad) || b.has_atom(bad))
    throw ArgumentError("equation contains derivatives of its leading coordinate");
  Expr rhs = -b * a.inverse();
  return SolvedForm{leading, rhs};
}

Expr reduce_on_manifold(const Expr &e, const std::vector<SolvedForm> &forms) {
  for (const auto &f : forms)
    if (f.rhs.order() != e.order())
      throw ConfigError("solved form has a different truncation order");
  std::map<JetCoord, Expr> memo;
  std::set<JetCoord> active;
  std::function<Expr(const Expr &)> reduce;
  std::function<std::optional<Expr>(const Atom &)> replace = [&](const Atom &a) -> std::optional<Expr> {
    if (!a.is_jet())
      return std::nullopt;
    const JetCoord &c = a.jet();
    const SolvedForm *form = nullptr;
    for (const auto &f : forms)
      if (f.leading.family == c.family && f.leading.sigma == c.sigma && contains(c.index, f.leading.index)) {
        form = &f;
        break;
      }
    if (!form)
      return std::nullopt;
    if (auto it = memo.find(c); it != memo.end())
      return it->second;
    if (!active.insert(c).second)
      throw ConfigError("circular solved forms");
    Expr r = reduce(total_derivative(form->rhs, difference(c.index, form->leading.index)));
    active.erase(c);
    memo.emplace(c, r);
    return r;
  };
  reduce = [&](const Expr &x) { return x.substitute_atoms(replace); };
  return reduce(e);
}

ProlongedGenerator prolong(const Generator &g, int k, std::size_t n_independents) {
  if (k < 1)
    throw ArgumentError("prolongation order must be at least 1");
  if (k > kMaxProlongation)
    throw ArgumentError("prolongation order is capped at 4");
  ProlongedGenerator pg;
  pg.xi = g.xi();
  pg.eta = g.eta();
  pg.order = k;
  if (pg.xi.size() != n_independents)
    throw ArgumentError("generator has the wrong number of xi components");
  const int order = g.order();
  std::vector<std::vector<Expr>> dxi(n_independents);
  for (std::size_t i = 0; i < n_independents; ++i)
    for (std::size_t j = 0; j < n_independents; ++j)
      dxi[i].push_back(total_derivative(pg.xi[j], static_cast<std::uint8_t>(i)));
  for (std::uint32_t sigma = 0; sigma < pg.eta.size(); ++sigma) {
    for (int len = 1; len <= k; ++len) {
      std::vector<MultiIndex> idx;
      MultiIndex cur;
      enumerate_indices(n_independents, static_cast<std::size_t>(len), 0, cur, idx);
      for (const MultiIndex &kk : idx) {
        const std::uint8_t i = kk.back();
        MultiIndex j(kk.begin(), kk.end() - 1);
        Expr prev = j.empty() ? pg.eta[sigma] : pg.zeta.at(JetCoord{Family::U, sigma, j});
        Expr z = total_derivative(prev, i);
        for (std::size_t m = 0; m < n_independents; ++m)
          if (!dxi[i][m].is_zero())
            z -= dxi[i][m] *
                 Expr::atom(Atom::jet(Family::U, sigma, with_index(j, static_cast<std::uint8_t>(m))), order);
        pg.zeta.emplace(JetCoord{Family::U, sigma, kk}, std::move(z));
      }
    }
  }
  return pg;
}

Expr apply_generator(const ProlongedGenerator &pg, const Expr &e) {
  if (max_order(e, Family::U) > static_cast<std::size_t>(pg.order))
    throw ArgumentError("prolongation order is lower than the derivative order of the expression");
  const int order = e.order();
  Expr out(order);
  for (std::size_t i = 0; i < pg.xi.size(); ++i)
    if (!pg.xi[i].is_zero())
      out += pg.xi[i].with_order(order) * partial_independent(e, static_cast<std::uint8_t>(i));
  for (std::uint32_t s = 0; s < pg.eta.size(); ++s)
    if (!pg.eta[s].is_zero())
      out += pg.eta[s].with_order(order) * partial_jet(e, JetCoord{Family::U, s, {}});
  for (const Atom &a : e.atoms()) {
    if (!a.is_jet() || a.jet().family != Family::U || a.jet().index.empty())
      continue;
    const Expr &z = pg.zeta.at(a.jet());
    if (!z.is_zero())
      out += z.with_order(order) * partial_jet(e, a.jet());
  }
  return out;
}

} // namespace adjforge
