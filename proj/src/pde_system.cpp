#include "adjforge/pde_system.hpp"

#include "adjforge/error.hpp"

namespace adjforge {

int PdeSystem::order() const { return equations.empty() ? Expr::kDefaultOrder : equations[0].expr.order(); }

std::size_t PdeSystem::differential_order() const {
  std::size_t r = 0;
  for (const auto &eq : equations)
    r = std::max(r, max_order(eq.expr, Family::U));
  return r;
}

std::vector<SolvedForm> PdeSystem::solved_forms() const {
  std::vector<SolvedForm> out;
  for (const auto &eq : equations)
    out.push_back(solve_for(eq.expr, eq.leading));
  return out;
}

PdeSystem PdeSystem::unperturbed() const {
  PdeSystem s = *this;
  for (auto &eq : s.equations)
    eq.expr = eq.expr.eps_part(0);
  return s;
}

PdeSystem PdeSystem::with_order(int order) const {
  PdeSystem s = *this;
  for (auto &eq : s.equations)
    eq.expr = eq.expr.with_order(order);
  return s;
}

const char *to_string(SubstitutionKind k) {
  switch (k) {
  case SubstitutionKind::Strict:
    return "strict";
  case SubstitutionKind::Quasi:
    return "quasi";
  case SubstitutionKind::Weak:
    return "weak";
  case SubstitutionKind::Differential:
    return "differential";
  }
  return "weak";
}

Substitution Substitution::from_full(std::string name, const std::vector<Expr> &v) {
  Substitution s;
  s.name = std::move(name);
  for (const auto &e : v) {
    if (e.max_eps() > 1)
      throw ArgumentError("substitution has terms beyond first order in eps");
    s.phi.push_back(e.eps_part(0));
    s.psi.push_back(e.eps_part(1));
  }
  return s;
}

std::vector<Expr> Substitution::full() const {
  std::vector<Expr> out;
  for (std::size_t i = 0; i < phi.size(); ++i)
    out.push_back(phi[i] + Expr::eps(1, phi[i].order()) * psi.at(i));
  return out;
}

bool Substitution::is_trivial() const {
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (!phi[i].is_zero() || !psi.at(i).is_zero())
      return false;
  return true;
}

bool Substitution::phi_is_zero() const {
  for (const auto &p : phi)
    if (!p.is_zero())
      return false;
  return true;
}

SubstitutionKind Substitution::kind() const {
  bool independent = false;
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (const Expr *e : {&phi[i], &psi[i]}) {
      if (e->has_atom([](const Atom &a) { return a.is_jet() && !a.jet().index.empty(); }))
        return SubstitutionKind::Differential;
      if (e->has_atom([](const Atom &a) {
            if (a.is_base())
              return true;
            if (a.is_func())
              for (const auto &arg : a.func().args)
                if (!arg.dependent)
                  return true;
            return false;
          }))
        independent = true;
    }
  if (independent)
    return SubstitutionKind::Weak;
  bool strict = true;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    Expr u = Expr::atom(Atom::jet(Family::U, static_cast<std::uint32_t>(i)), phi[i].order());
    if (!(phi[i] == u) || !psi[i].is_zero())
      strict = false;
  }
  return strict ? SubstitutionKind::Strict : SubstitutionKind::Quasi;
}

Substitution Substitution::with_order(int order) const {
  Substitution s = *this;
  for (auto &e : s.phi)
    e = e.with_order(order);
  for (auto &e : s.psi)
    e = e.with_order(order);
  return s;
}

Expr apply_substitution(const Expr &e, const Substitution &sub) {
  Expr r = e;
  const auto v = sub.with_order(e.order()).full();
  for (std::uint32_t s = 0; s < v.size(); ++s)
    r = substitute_dependent(r, Family::V, s, v[s]);
  return r;
}

} // namespace adjforge
