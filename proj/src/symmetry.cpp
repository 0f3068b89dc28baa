#include "adjforge/symmetry.hpp"

#include <algorithm>

#include "adjforge/error.hpp"
#include "adjforge/jet.hpp"

namespace adjforge {

namespace {

constexpr std::uint32_t kRenameOffset = 1000;

ProlongedGenerator prolong_for(const PdeSystem &s, const Generator &g) {
  int k = std::max<int>(1, static_cast<int>(s.differential_order()));
  return prolong(g.with_order(s.order()), k, s.space.n_independents());
}

std::vector<Expr> applied(const PdeSystem &s, const Generator &g) {
  ProlongedGenerator pg = prolong_for(s, g);
  auto forms = s.solved_forms();
  std::vector<Expr> out;
  for (std::size_t a = 0; a < s.size(); ++a)
    out.push_back(reduce_on_manifold(apply_generator(pg, s.full(a)), forms));
  return out;
}

CheckReport verdict(const std::vector<Expr> &r, int order) {
  CheckReport rep;
  rep.passed = true;
  rep.residual = Expr(order);
  for (const auto &e : r) {
    if (!e.is_zero() && rep.passed) {
      rep.passed = false;
      rep.residual = e;
    }
  }
  return rep;
}

/// Moves U^s to Aux^(offset+s) so it can be replaced by U terms.
Expr park_dependents(const Expr &e) {
  const int order = e.order();
  return e.substitute_atoms([order](const Atom &a) -> std::optional<Expr> {
    if (a.is_jet() && a.jet().family == Family::U)
      return Expr::atom(Atom::jet(Family::Aux, kRenameOffset + a.jet().sigma, a.jet().index), order);
    if (a.is_func() && a.involves(Family::U)) {
      FuncApp f = a.func();
      for (auto &arg : f.args)
        if (arg.dependent && arg.family == Family::U)
          arg = FuncArg{true, Family::Aux, kRenameOffset + arg.index};
      return Expr::atom(Atom(f), order);
    }
    return std::nullopt;
  });
}

} // namespace

CheckReport check_exact_symmetry(const PdeSystem &s, const Generator &g) {
  if (g.has_eps_part())
    throw ArgumentError("exact symmetry check takes a generator without eps part");
  const PdeSystem e0 = s.unperturbed();
  auto r = applied(e0, g.unperturbed());
  CheckReport rep = verdict(r, e0.order());
  for (std::size_t a = 0; a < r.size(); ++a)
    rep.parts.emplace_back("pr X(E0_" + std::to_string(a + 1) + ")", r[a]);
  return rep;
}

std::vector<Expr> auxiliary_H(const PdeSystem &s, const Generator &x0) {
  if (x0.has_eps_part())
    throw ArgumentError("auxiliary function takes the unperturbed part of a generator");
  if (!check_exact_symmetry(s, x0).passed)
    throw InconsistencyError("generator '" + x0.name + "' is not an exact symmetry of the unperturbed system");
  std::vector<Expr> out;
  for (const Expr &e : applied(s, x0)) {
    if (!e.eps_part(0).is_zero())
      throw InconsistencyError("pr X0(E) is not divisible by eps on the manifold");
    out.push_back(e.shift_eps(-1).with_order(1));
  }
  return out;
}

CheckReport check_approx_symmetry(const PdeSystem &s, const Generator &g) {
  auto r = applied(s, g);
  CheckReport rep = verdict(r, s.order());
  for (std::size_t a = 0; a < r.size(); ++a)
    rep.parts.emplace_back("pr X(E_" + std::to_string(a + 1) + ")", r[a]);
  CheckReport split = check_approx_symmetry_split(s, g);
  for (auto &p : split.parts)
    rep.parts.push_back(std::move(p));
  rep.note = split.passed == rep.passed ? "split check agrees" : "split check disagrees: " + split.note;
  return rep;
}

CheckReport check_approx_symmetry_split(const PdeSystem &s, const Generator &g) {
  const Generator x0 = g.unperturbed();
  CheckReport exact = check_exact_symmetry(s, x0);
  if (!exact.passed) {
    exact.note = "X0 is not an exact symmetry of the unperturbed system";
    return exact;
  }
  std::vector<Expr> h = auxiliary_H(s, x0);
  const PdeSystem e0 = s.unperturbed();
  Generator x1 = g.eps_part();
  auto x1e0 = applied(e0, x1);
  std::vector<Expr> r;
  CheckReport rep;
  for (std::size_t a = 0; a < h.size(); ++a) {
    Expr sum = x1e0[a].with_order(1) + h[a];
    r.push_back(sum);
    rep.parts.emplace_back("H_" + std::to_string(a + 1), h[a]);
    rep.parts.emplace_back("X1(E0_" + std::to_string(a + 1) + ") + H", sum);
  }
  CheckReport v = verdict(r, 1);
  rep.passed = v.passed;
  rep.residual = v.residual;
  return rep;
}

std::vector<PdeSystem> fs_expand(const PdeSystem &s, int order) {
  if (order < 0 || order > 2)
    throw UnsupportedOperation("expansion order must be 0, 1 or 2");
  if (order == 0) {
    PdeSystem e0 = s.unperturbed();
    return {e0};
  }
  const std::size_t n = s.space.n_dependents();
  const std::uint32_t width = static_cast<std::uint32_t>(order + 1);
  const int working = order + 1;
  Space space = s.space;
  space.dependents.clear();
  space.adjoints.clear();
  for (std::size_t sigma = 0; sigma < n; ++sigma) {
    for (int k = 0; k <= order; ++k) {
      space.dependents.push_back(s.space.dependents[sigma] + std::to_string(k));
      const std::string adj = sigma < s.space.adjoints.size() ? s.space.adjoints[sigma] : "v";
      space.adjoints.push_back(adj + std::to_string(k));
    }
  }
  std::vector<PdeSystem> out(static_cast<std::size_t>(order + 1));
  for (int j = 0; j <= order; ++j) {
    out[j].name = s.name + "_" + std::to_string(j);
    out[j].space = space;
  }
  for (const Equation &eq : s.equations) {
    Expr e = park_dependents(eq.expr.with_order(working));
    for (std::uint32_t sigma = 0; sigma < n; ++sigma) {
      Expr series(working);
      for (std::uint32_t k = 0; k < width; ++k)
        series += Expr::eps(static_cast<int>(k), working) * Expr::atom(Atom::jet(Family::U, sigma * width + k), working);
      e = substitute_dependent(e, Family::Aux, kRenameOffset + sigma, series);
    }
    for (int j = 0; j <= order; ++j) {
      Equation part;
      part.name = eq.name + "_" + std::to_string(j);
      part.expr = e.eps_part(j).with_order(s.order());
      part.leading = JetCoord{Family::U, eq.leading.sigma * width + static_cast<std::uint32_t>(j), eq.leading.index};
      out[j].equations.push_back(std::move(part));
    }
  }
  return out;
}

} // namespace adjforge
