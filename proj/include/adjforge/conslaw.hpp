#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adjforge/generator.hpp"
#include "adjforge/jet.hpp"
#include "adjforge/pde_system.hpp"
#include "adjforge/report.hpp"

namespace adjforge {

/// W^s = eta^s - xi^j u^s_j, one entry per dependent variable.
std::vector<Expr> characteristic(const Generator &g, std::size_t n_independents);

struct ConslawOptions {
  /// Keep the xi^i L term, which vanishes on solutions.
  bool keep_xi_l = false;
  /// Move second derivatives out of the leading-direction component.
  bool simplify = true;
};

struct ConservedVector {
  /// C^i truncated at the system's order.
  std::vector<Expr> components;
  /// C^i at the working order, used for verification.
  std::vector<Expr> full;
  std::string generator;
  std::optional<Substitution> substitution;
  bool omitted_xi_l = true;

  bool nonlocal() const { return !substitution.has_value(); }
};

/// Precision used while building and verifying conserved vectors.
constexpr int kConslawWorkingOrder = 6;

/// Conserved vector of the formal Lagrangian for generator `g`. Without a
/// substitution the adjoint variables stay symbolic.
ConservedVector conserved_vector(const PdeSystem &s, const Generator &g, const std::optional<Substitution> &sub,
                                 const ConslawOptions &opt = {});

/// Same construction from a given characteristic (e.g. a symbolic W).
ConservedVector conserved_vector(const PdeSystem &s, const std::vector<Expr> &w,
                                 const std::optional<Substitution> &sub, const ConslawOptions &opt = {});

/// Divergence-preserving clean-up: manifold reduction, transfer of mixed
/// second derivatives from the leading direction, and removal of terms
/// whose derivative in their own direction vanishes.
std::vector<Expr> simplify_components(const std::vector<Expr> &c, const PdeSystem &s);

/// Adjoint equations solved for the adjoint counterpart of each leading derivative.
std::vector<SolvedForm> adjoint_solved_forms(const PdeSystem &s);

/// D_i C^i on the manifold. `residual` is its truncation at order 3 and the
/// check passes when no eps^0 or eps^1 term survives. The untruncated
/// divergence is the part named "divergence".
CheckReport verify_divergence(const ConservedVector &cv, const PdeSystem &s,
                              const std::vector<SolvedForm> *adjoint_forms = nullptr);

} // namespace adjforge
