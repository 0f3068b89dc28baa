#pragma once

#include <optional>
#include <vector>

#include "adjforge/coefficient.hpp"

namespace adjforge {

/// Row-reduced form of A x = b over the coefficient field.
///
/// Pivots are taken from the rightmost available column, so the free
/// unknowns are the leftmost ones.
struct LinearSolution {
  bool consistent = true;
  std::vector<std::size_t> free;
  /// For every unknown: constant part and coefficient per free unknown.
  std::vector<Coefficient> constant;
  std::vector<std::vector<Coefficient>> in_terms_of_free;
};

LinearSolution solve_linear(std::vector<std::vector<Coefficient>> a, std::vector<Coefficient> b);

} // namespace adjforge
