#pragma once

#include <vector>

#include "adjforge/expr.hpp"
#include "adjforge/generator.hpp"

namespace adjforge {

/// D_i e, including the chain rule through function applications.
Expr total_derivative(const Expr &e, std::uint8_t i);
/// Iterated total derivative D_{j1} ... D_{jk} e.
Expr total_derivative(const Expr &e, const MultiIndex &j);

/// Partial derivative treating the canonical coordinate `c` as a symbol.
Expr partial_jet(const Expr &e, const JetCoord &c);
/// Explicit partial derivative in the independent variable x^i.
Expr partial_independent(const Expr &e, std::uint8_t i);

/// Euler operator sum_J (-D)_J d/du_J over the sorted multi-indices present.
Expr variational_derivative(const Expr &e, Family f, std::uint32_t sigma);

/// Highest derivative order of the given family in `e` (0 when absent).
std::size_t max_order(const Expr &e, Family f);
/// Coordinates of a family and variable index that occur in `e`.
std::vector<JetCoord> coordinates(const Expr &e, Family f, std::uint32_t sigma);

/// Replaces every coordinate w_J of (family, sigma) by D_J(s). Function
/// applications taking w as an argument are Taylor expanded around the
/// eps-free part of `s`, which must then be a single variable.
Expr substitute_dependent(const Expr &e, Family family, std::uint32_t sigma, const Expr &s);

/// leading = rhs with rhs free of leading and its derivatives.
struct SolvedForm {
  JetCoord leading;
  Expr rhs;
};

/// Solves `equation` = 0 for `leading`; the equation must be affine in it
/// with a series-invertible coefficient.
SolvedForm solve_for(const Expr &equation, const JetCoord &leading);
/// Coefficient of `leading` in the affine equation.
Expr leading_coefficient(const Expr &equation, const JetCoord &leading);

/// Rewrites leading coordinates and their derivatives until none remain.
Expr reduce_on_manifold(const Expr &e, const std::vector<SolvedForm> &forms);

/// Prolongation coefficients through order k (1 <= k <= 4).
ProlongedGenerator prolong(const Generator &g, int k, std::size_t n_independents);
/// pr X(e); throws ArgumentError when the prolongation order is too small.
Expr apply_generator(const ProlongedGenerator &pg, const Expr &e);

} // namespace adjforge
