#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adjforge/pde_system.hpp"
#include "adjforge/report.hpp"

namespace adjforge {

/// sum_b v^b * E_b.
Expr formal_lagrangian(const PdeSystem &s);

struct AdjointOptions {
  bool unperturbed = false;
  /// Flip each equation so its first canonical term has a positive coefficient.
  bool normalize_sign = false;
};

/// delta L / delta u^s for each dependent variable.
std::vector<Expr> adjoint_system(const PdeSystem &s, const AdjointOptions &opt = {});

/// The unperturbed adjoint under v = phi vanishes on E0 = 0.
CheckReport check_nsa_exact(const PdeSystem &s, const Substitution &sub);

/// Approximate self-adjointness at O(eps^2). The residual is the order-3 remainder; the
/// verdict uses its truncation at order 2.
CheckReport check_nsa_approx(const PdeSystem &s, const Substitution &sub);

/// Coefficients of `residual` grouped by eps power and by monomials in jet
/// coordinates of order >= 1.
std::vector<Expr> determining_split(const Expr &residual, const PdeSystem &s);

/// Parametric solution of a linear ansatz.
struct SolutionFamily {
  Substitution substitution;
  std::vector<Symbol> free;
};

/// Substitution with phi = sum a_i b_i and psi = sum b_i' b_i over `basis`,
/// with fresh unknowns returned in `unknowns` (phi coefficients first). A
/// basis of monomials in the independents is ordered by descending degree,
/// then by descending exponents in declaration order (x*t, x, t, 1).
Substitution ansatz_from_basis(const PdeSystem &s, const std::vector<Expr> &basis, std::vector<Symbol> &unknowns);

/// Solves the determining equations of an ansatz linear in `unknowns`.
/// Free unknowns are renamed c1, c2, ... in the order of `unknowns`.
/// Returns an empty list when only the zero substitution remains.
std::vector<SolutionFamily> solve_substitution_ansatz(const PdeSystem &s, const Substitution &ansatz,
                                                      const std::vector<Symbol> &unknowns);

/// v = eps*f is a substitution when f solves the unperturbed adjoint.
CheckReport check_eps_lift(const PdeSystem &s, const std::vector<Expr> &f);

enum class StrictConvention { UPlusEpsU, U, EpsU };
const char *to_string(StrictConvention c);
StrictConvention parse_convention(const std::string &name);

struct Multiplier {
  Expr mu;
  Expr nu;
  StrictConvention convention = StrictConvention::UPlusEpsU;
};

/// Multiplier making a scalar equation approximately strictly self-adjoint.
Multiplier multiplier_convert(const PdeSystem &s, const Substitution &sub,
                              StrictConvention c = StrictConvention::UPlusEpsU);

/// Adjoint of (mu + eps*nu)E under the strict substitution of `convention`.
CheckReport check_strict_sa_approx(const PdeSystem &s, const Multiplier &m, StrictConvention convention);

/// Reads off Lambda with R_a = Lambda_ab E_b from affine dependence on the
/// leading derivatives; nullopt when R is not of that shape.
std::optional<std::vector<std::vector<Expr>>> extract_multipliers(const std::vector<Expr> &r, const PdeSystem &s);

} // namespace adjforge
