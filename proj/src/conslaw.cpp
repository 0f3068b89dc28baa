#include "adjforge/conslaw.hpp"

#include <algorithm>

#include "adjforge/error.hpp"
#include "adjforge/selfadjoint.hpp"

namespace adjforge {

namespace {

constexpr int kMaxTransfers = 64;
constexpr int kResidualOrder = 3;

/// dL/du_J for an ordered index J, split evenly over the orderings of J.
Expr ordered_partial(const Expr &l, std::uint32_t sigma, MultiIndex j) {
  std::sort(j.begin(), j.end());
  const long n = orderings(j);
  Expr d = partial_jet(l, JetCoord{Family::U, sigma, j});
  return n == 1 ? d : d / Coefficient(n);
}

Expr u_jet(std::uint32_t sigma, const MultiIndex &j, int order) {
  MultiIndex k = j;
  std::sort(k.begin(), k.end());
  return Expr::atom(Atom::jet(Family::U, sigma, k), order);
}

std::vector<Expr> formula(const PdeSystem &s, const std::vector<Expr> &w, const std::vector<Expr> *xi) {
  const int order = kConslawWorkingOrder;
  const std::size_t n = s.space.n_independents();
  const PdeSystem sys = s.with_order(order);
  const Expr l = formal_lagrangian(sys);
  if (max_order(l, Family::U) > 3)
    throw UnsupportedOperation("conserved vector formula is implemented through third-order derivatives");
  std::vector<Expr> c(n, Expr(order));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ui = static_cast<std::uint8_t>(i);
    if (xi)
      c[i] += (*xi)[i].with_order(order) * l;
    for (std::uint32_t sigma = 0; sigma < w.size(); ++sigma) {
      const Expr ws = w[sigma].with_order(order);
      Expr first = ordered_partial(l, sigma, {ui});
      for (std::size_t j = 0; j < n; ++j) {
        const auto uj = static_cast<std::uint8_t>(j);
        Expr second = ordered_partial(l, sigma, {ui, uj});
        first -= total_derivative(second, uj);
        for (std::size_t k = 0; k < n; ++k) {
          const auto uk = static_cast<std::uint8_t>(k);
          Expr third = ordered_partial(l, sigma, {ui, uj, uk});
          if (third.is_zero())
            continue;
          first += total_derivative(third, MultiIndex{uj, uk});
          second -= total_derivative(third, uk);
          c[i] += total_derivative(ws, MultiIndex{uj, uk}) * third;
        }
        if (!second.is_zero())
          c[i] += total_derivative(ws, uj) * second;
      }
      c[i] += ws * first;
    }
  }
  return c;
}

/// Last index of the first solved derivative.
std::uint8_t leading_direction(const PdeSystem &s) {
  if (s.equations.empty() || s.equations[0].leading.index.empty())
    return 0;
  return s.equations[0].leading.index.back();
}

struct Transfer {
  JetCoord jet;
  std::uint8_t dir = 0;
};

std::optional<Transfer> find_transfer(const Expr &e, std::uint8_t tau) {
  for (const Term &t : e.terms()) {
    for (const auto &[a, p] : t.mono) {
      if (!a.is_jet() || a.jet().family != Family::U || a.jet().order() < 2 || !(p == Exponent(1)))
        continue;
      for (std::uint8_t y : a.jet().index)
        if (y != tau)
          return Transfer{a.jet(), y};
    }
  }
  return std::nullopt;
}

/// Terms of `e` with factor `jet` to the first power, divided by it.
Expr linear_coefficient(const Expr &e, const JetCoord &jet) {
  std::vector<Term> out;
  for (const Term &t : e.terms()) {
    auto it = std::find_if(t.mono.begin(), t.mono.end(), [&](const auto &f) { return f.first == Atom(jet); });
    if (it == t.mono.end() || !(it->second == Exponent(1)))
      continue;
    Term r = t;
    r.mono.erase(r.mono.begin() + (it - t.mono.begin()));
    out.push_back(std::move(r));
  }
  return Expr::from_terms(std::move(out), e.order());
}

Expr drop_trivial(const Expr &e, std::uint8_t own) {
  std::vector<Term> keep;
  for (const Term &t : e.terms()) {
    bool trivial = std::all_of(t.mono.begin(), t.mono.end(),
                               [&](const auto &f) { return f.first.is_base() && f.first.base().index != own; });
    if (!trivial)
      keep.push_back(t);
  }
  return Expr::from_terms(std::move(keep), e.order());
}

ConservedVector build(const PdeSystem &s, const std::vector<Expr> &w, const std::vector<Expr> *xi,
                      const std::optional<Substitution> &sub, const ConslawOptions &opt) {
  if (s.differential_order() > 3)
    throw UnsupportedOperation("conserved vector formula is implemented through third-order systems");
  if (w.size() != s.space.n_dependents())
    throw ArgumentError("characteristic needs one entry per dependent variable");
  std::vector<Expr> c = formula(s, w, opt.keep_xi_l ? xi : nullptr);
  if (opt.simplify)
    c = simplify_components(c, s);
  if (sub) {
    const Substitution applied = sub->with_order(kConslawWorkingOrder);
    for (auto &e : c)
      e = apply_substitution(e, applied);
    if (opt.simplify)
      c = simplify_components(c, s);
  }
  ConservedVector cv;
  cv.full = c;
  for (const auto &e : c)
    cv.components.push_back(e.with_order(s.order()));
  cv.substitution = sub;
  cv.omitted_xi_l = !(opt.keep_xi_l && xi);
  return cv;
}

} // namespace

std::vector<Expr> characteristic(const Generator &g, std::size_t n_independents) {
  const int order = g.order();
  const std::vector<Expr> xi = g.xi();
  const std::vector<Expr> eta = g.eta();
  std::vector<Expr> w;
  for (std::uint32_t sigma = 0; sigma < eta.size(); ++sigma) {
    Expr e = eta[sigma];
    for (std::size_t j = 0; j < n_independents && j < xi.size(); ++j)
      e -= xi[j] * u_jet(sigma, {static_cast<std::uint8_t>(j)}, order);
    w.push_back(e);
  }
  return w;
}

std::vector<Expr> simplify_components(const std::vector<Expr> &c, const PdeSystem &s) {
  if (c.empty())
    return c;
  const int order = c[0].order();
  const auto forms = s.with_order(order).solved_forms();
  const std::uint8_t tau = leading_direction(s);
  std::vector<Expr> out;
  for (const auto &e : c)
    out.push_back(reduce_on_manifold(e, forms));
  if (tau < out.size()) {
    for (int step = 0; step < kMaxTransfers; ++step) {
      auto tr = find_transfer(out[tau], tau);
      if (!tr)
        break;
      Expr p = linear_coefficient(out[tau], tr->jet);
      MultiIndex rest = tr->jet.index;
      rest.erase(std::find(rest.begin(), rest.end(), tr->dir));
      const Expr lower = Expr::atom(Atom::jet(Family::U, tr->jet.sigma, rest), order);
      out[tau] -= p * Expr::atom(Atom(tr->jet), order);
      out[tau] -= total_derivative(p, tr->dir) * lower;
      out[tr->dir] += total_derivative(p * lower, tau);
      out[tau] = reduce_on_manifold(out[tau], forms);
      out[tr->dir] = reduce_on_manifold(out[tr->dir], forms);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = drop_trivial(out[i], static_cast<std::uint8_t>(i));
  return out;
}

ConservedVector conserved_vector(const PdeSystem &s, const Generator &g, const std::optional<Substitution> &sub,
                                 const ConslawOptions &opt) {
  const Generator gw = g.with_order(kConslawWorkingOrder);
  const std::vector<Expr> xi = gw.xi();
  ConservedVector cv = build(s, characteristic(gw, s.space.n_independents()), &xi, sub, opt);
  cv.generator = g.name;
  return cv;
}

ConservedVector conserved_vector(const PdeSystem &s, const std::vector<Expr> &w,
                                 const std::optional<Substitution> &sub, const ConslawOptions &opt) {
  if (opt.keep_xi_l)
    throw ArgumentError("keeping xi L needs a generator");
  return build(s, w, nullptr, sub, opt);
}

std::vector<SolvedForm> adjoint_solved_forms(const PdeSystem &s) {
  if (s.size() != s.space.n_dependents())
    throw ConfigError("adjoint solved forms need a square system");
  std::vector<Expr> adj = adjoint_system(s);
  std::vector<SolvedForm> out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    JetCoord lead{Family::V, static_cast<std::uint32_t>(a), s.equations[a].leading.index};
    out.push_back(solve_for(adj[a], lead));
  }
  return out;
}

CheckReport verify_divergence(const ConservedVector &cv, const PdeSystem &s,
                              const std::vector<SolvedForm> *adjoint_forms) {
  if (cv.nonlocal() && !adjoint_forms)
    throw ConfigError("nonlocal conserved vector needs the adjoint equations on the manifold");
  const int order = cv.full.empty() ? kConslawWorkingOrder : cv.full[0].order();
  std::vector<SolvedForm> forms = s.with_order(order).solved_forms();
  if (adjoint_forms)
    for (const auto &f : *adjoint_forms)
      forms.push_back(SolvedForm{f.leading, f.rhs.with_order(order)});
  Expr div(order);
  for (std::size_t i = 0; i < cv.full.size(); ++i)
    div += total_derivative(cv.full[i], static_cast<std::uint8_t>(i));
  div = reduce_on_manifold(div, forms);
  CheckReport rep;
  rep.residual = div.with_order(kResidualOrder);
  rep.passed = rep.residual.eps_part(0).is_zero() && rep.residual.eps_part(1).is_zero();
  rep.parts.emplace_back("divergence", div);
  if (cv.nonlocal())
    rep.note = "nonlocal";
  return rep;
}

} // namespace adjforge
