#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adjforge/expr.hpp"

namespace adjforge {

/// Verdict of a check with the expressions that justify it.
struct CheckReport {
  bool passed = false;
  /// The remainder: O(eps^2) part or failure witness.
  Expr residual;
  /// Set when lambda/mu could be read off the substituted adjoint.
  bool has_multipliers = false;
  std::vector<std::vector<Expr>> lambda;
  std::vector<std::vector<Expr>> mu;
  std::vector<Expr> determining;
  std::string note;
  /// Named intermediate expressions, in the order they were produced.
  std::vector<std::pair<std::string, Expr>> parts;
};

} // namespace adjforge
