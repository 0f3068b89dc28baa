#pragma once

#include <map>
#include <string>
#include <vector>

#include "adjforge/expr.hpp"

namespace adjforge {

/// Point vector field X0 + eps*X1 with coefficients in (x, u).
struct Generator {
  std::string name;
  std::vector<Expr> xi0, xi1;  // one per independent variable
  std::vector<Expr> eta0, eta1; // one per dependent variable

  static Generator zero(std::size_t n_independents, std::size_t n_dependents, int order = Expr::kDefaultOrder);

  int order() const;
  bool has_eps_part() const;
  /// xi0 + eps*xi1 and eta0 + eps*eta1.
  std::vector<Expr> xi() const;
  std::vector<Expr> eta() const;
  Generator unperturbed() const;
  Generator eps_part() const;
  /// eps*X as a split generator (X must be unperturbed).
  Generator eps_lift() const;
  Generator with_order(int order) const;
  friend Generator operator+(const Generator &a, const Generator &b);
};

/// Generator together with its prolongation coefficients.
struct ProlongedGenerator {
  std::vector<Expr> xi;
  std::vector<Expr> eta;
  int order = 0;
  std::map<JetCoord, Expr> zeta;
};

} // namespace adjforge
