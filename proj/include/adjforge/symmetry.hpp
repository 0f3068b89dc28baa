#pragma once

#include <vector>

#include "adjforge/generator.hpp"
#include "adjforge/pde_system.hpp"
#include "adjforge/report.hpp"

namespace adjforge {

/// pr X(E0) on the E0 manifold; `g` must not have an eps part.
CheckReport check_exact_symmetry(const PdeSystem &s, const Generator &g);

/// (1/eps) pr X0(E) on the perturbed manifold, one entry per equation.
/// Throws InconsistencyError when X0 is not an exact symmetry of E0.
std::vector<Expr> auxiliary_H(const PdeSystem &s, const Generator &x0);

/// pr(X0 + eps*X1)(E) on the perturbed manifold at O(eps^2).
/// The report also carries the split check X1(E0) + H in `parts`.
CheckReport check_approx_symmetry(const PdeSystem &s, const Generator &g);

/// X1(E0)|_{E0=0} + H = 0 with H from auxiliary_H.
CheckReport check_approx_symmetry_split(const PdeSystem &s, const Generator &g);

/// u = u0 + eps*u1 + ... + eps^k uk split by powers of eps. Entry j holds
/// the eps^j equations; every entry shares the expanded variable space.
std::vector<PdeSystem> fs_expand(const PdeSystem &s, int order);

} // namespace adjforge
