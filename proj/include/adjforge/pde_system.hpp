#pragma once

#include <string>
#include <vector>

#include "adjforge/expr.hpp"
#include "adjforge/jet.hpp"
#include "adjforge/space.hpp"

namespace adjforge {

struct Equation {
  std::string name;
  Expr expr; // E0 + eps*E1, written as expr = 0
  JetCoord leading;
};

/// Perturbed system E_a = E0_a + eps*E1_a with one solved form per equation.
struct PdeSystem {
  std::string name;
  Space space;
  std::vector<Equation> equations;

  int order() const;
  std::size_t size() const { return equations.size(); }
  Expr full(std::size_t a) const { return equations.at(a).expr; }
  Expr e0(std::size_t a) const { return equations.at(a).expr.eps_part(0); }
  Expr e1(std::size_t a) const { return equations.at(a).expr.eps_part(1); }
  std::size_t differential_order() const;

  std::vector<SolvedForm> solved_forms() const;
  PdeSystem unperturbed() const;
  PdeSystem with_order(int order) const;
};

enum class SubstitutionKind { Strict, Quasi, Weak, Differential };
const char *to_string(SubstitutionKind k);

/// v^s = phi^s + eps*psi^s for the adjoint variables.
struct Substitution {
  std::string name;
  std::vector<Expr> phi;
  std::vector<Expr> psi;

  static Substitution from_full(std::string name, const std::vector<Expr> &v);
  std::vector<Expr> full() const;
  bool is_trivial() const;
  bool phi_is_zero() const;
  SubstitutionKind kind() const;
  Substitution with_order(int order) const;
};

/// Replaces every adjoint variable of `e` by phi + eps*psi.
Expr apply_substitution(const Expr &e, const Substitution &sub);

} // namespace adjforge
